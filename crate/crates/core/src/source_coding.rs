//! Fixed-length versus optimal variable-length coding of discrete sources.
//!
//! Codewords are strings of `'0'`/`'1'` characters, most significant digit first.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::discrete::{entropy, log2, Bits, DiscretePmf};
use crate::error::{Error, Result};
use crate::numeric::canonical_sum;

/// Block sources are limited to `block_length · log2(m) <= MAX_BLOCK_BITS`.
pub const MAX_BLOCK_BITS: f64 = 24.0;

/// A prefix-free binary code.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrefixCode<S> {
    entries: Vec<(S, String)>,
}

impl<S: Clone + PartialEq> PrefixCode<S> {
    /// Checks the digit alphabet, prefix-freeness and the Kraft inequality.
    pub fn new(entries: Vec<(S, String)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::validation("a code needs at least one codeword"));
        }
        for (i, (s, w)) in entries.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::validation(format!("codeword {i} is empty")));
            }
            if w.bytes().any(|b| b != b'0' && b != b'1') {
                return Err(Error::validation(format!(
                    "codeword {w:?} has digits other than 0/1"
                )));
            }
            if entries[..i].iter().any(|(t, _)| t == s) {
                return Err(Error::validation(format!(
                    "symbol at index {i} is listed twice"
                )));
            }
        }
        for (i, (_, a)) in entries.iter().enumerate() {
            for (j, (_, b)) in entries.iter().enumerate() {
                if i != j && b.starts_with(a.as_str()) {
                    return Err(Error::validation(format!(
                        "codeword {a:?} is a prefix of {b:?}"
                    )));
                }
            }
        }
        let code = Self { entries };
        let kraft = code.kraft_sum();
        if kraft > 1.0 + 1e-12 {
            return Err(Error::validation(format!("Kraft sum {kraft} exceeds 1")));
        }
        Ok(code)
    }

    pub fn entries(&self) -> &[(S, String)] {
        &self.entries
    }

    pub fn codeword(&self, symbol: &S) -> Option<&str> {
        self.entries
            .iter()
            .find(|(s, _)| s == symbol)
            .map(|(_, w)| w.as_str())
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.entries.iter().map(|(_, w)| w.len()).collect()
    }

    /// `Σ 2^(−len)`.
    pub fn kraft_sum(&self) -> f64 {
        canonical_sum(self.entries.iter().map(|(_, w)| (-(w.len() as f64)).exp2()))
    }

    pub fn is_prefix_free(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, (_, a))| {
            self.entries
                .iter()
                .enumerate()
                .all(|(j, (_, b))| i == j || !b.starts_with(a.as_str()))
        })
    }

    /// Expected codeword length in binary digits per symbol under `pmf`.
    pub fn average_length(&self, pmf: &DiscretePmf<S>) -> Result<f64> {
        let terms = pmf
            .iter()
            .map(|(s, p)| {
                self.codeword(s)
                    .map(|w| p * w.len() as f64)
                    .ok_or_else(|| Error::validation("pmf symbol missing from code"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(canonical_sum(terms))
    }

    pub fn encode(&self, symbols: &[S]) -> Result<String> {
        let mut out = String::new();
        for (k, s) in symbols.iter().enumerate() {
            let w = self
                .codeword(s)
                .ok_or_else(|| Error::Codec(format!("symbol at position {k} has no codeword")))?;
            out.push_str(w);
        }
        Ok(out)
    }

    pub fn decode(&self, digits: &str) -> Result<Vec<S>> {
        let trie = Trie::build(self);
        let mut out = Vec::new();
        let mut node = 0;
        for (k, b) in digits.bytes().enumerate() {
            let bit = match b {
                b'0' => 0,
                b'1' => 1,
                other => {
                    return Err(Error::Codec(format!(
                        "invalid digit {:?} at position {k}",
                        other as char
                    )))
                }
            };
            node = trie.nodes[node].children[bit].ok_or_else(|| {
                Error::Codec(format!(
                    "no codeword continues with digit {bit} at position {k}"
                ))
            })?;
            if let Some(leaf) = trie.nodes[node].leaf {
                out.push(self.entries[leaf].0.clone());
                node = 0;
            }
        }
        if node != 0 {
            return Err(Error::Codec(format!(
                "dangling digits at end of input ({} bytes)",
                digits.len()
            )));
        }
        Ok(out)
    }
}

#[derive(Default)]
struct TrieNode {
    children: [Option<usize>; 2],
    leaf: Option<usize>,
}

struct Trie {
    nodes: Vec<TrieNode>,
}

impl Trie {
    fn build<S>(code: &PrefixCode<S>) -> Self {
        let mut nodes = vec![TrieNode::default()];
        for (idx, (_, w)) in code.entries.iter().enumerate() {
            let mut node = 0;
            for b in w.bytes() {
                let bit = (b - b'0') as usize;
                node = match nodes[node].children[bit] {
                    Some(n) => n,
                    None => {
                        nodes.push(TrieNode::default());
                        let n = nodes.len() - 1;
                        nodes[node].children[bit] = Some(n);
                        n
                    }
                };
            }
            nodes[node].leaf = Some(idx);
        }
        Trie { nodes }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NaiveLength {
    /// `log2(m)`, the fractional digit count.
    pub fractional: f64,
    /// `ceil(log2(m))`, what a realizable fixed-length code needs.
    pub fixed: u32,
}

pub fn naive_code_length<S>(pmf: &DiscretePmf<S>) -> NaiveLength {
    let m = pmf.probs().len();
    NaiveLength {
        fractional: log2(m as f64),
        fixed: usize::BITS - (m - 1).leading_zeros(),
    }
}

struct HeapNode {
    prob: f64,
    first: usize,
    id: usize,
}

impl PartialEq for HeapNode {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapNode {}

impl PartialOrd for HeapNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapNode {
    // reversed: BinaryHeap pops the smallest (prob, first symbol index)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .prob
            .total_cmp(&self.prob)
            .then_with(|| other.first.cmp(&self.first))
    }
}

/// Optimal prefix code by repeated merging of the two least probable subtrees.
///
/// Ties are broken by the lowest symbol index in each subtree. The lighter
/// subtree gets digit `0`. A single-symbol source gets the codeword `"0"`.
pub fn build_optimal_code<S: Clone + PartialEq>(pmf: &DiscretePmf<S>) -> PrefixCode<S> {
    let m = pmf.len();
    if m == 1 {
        return PrefixCode {
            entries: vec![(pmf.symbols()[0].clone(), "0".to_string())],
        };
    }
    // arena: leaves 0..m, internal nodes after
    let mut children: Vec<Option<(usize, usize)>> = vec![None; m];
    let mut heap: BinaryHeap<HeapNode> = pmf
        .probs()
        .iter()
        .enumerate()
        .map(|(i, &p)| HeapNode {
            prob: p,
            first: i,
            id: i,
        })
        .collect();
    while heap.len() > 1 {
        let a = heap.pop().expect("heap has two nodes");
        let b = heap.pop().expect("heap has two nodes");
        children.push(Some((a.id, b.id)));
        heap.push(HeapNode {
            prob: a.prob + b.prob,
            first: a.first.min(b.first),
            id: children.len() - 1,
        });
    }
    let root = heap.pop().expect("heap has a root").id;

    let mut words = vec![String::new(); m];
    let mut stack = vec![(root, String::new())];
    while let Some((id, prefix)) = stack.pop() {
        match children[id] {
            Some((zero, one)) => {
                stack.push((zero, format!("{prefix}0")));
                stack.push((one, format!("{prefix}1")));
            }
            None => words[id] = prefix,
        }
    }
    PrefixCode {
        entries: pmf.symbols().iter().cloned().zip(words).collect(),
    }
}

/// An iid source coded in blocks of `block_length` symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceSpec<S> {
    pmf: DiscretePmf<S>,
    block_length: usize,
}

impl<S: Clone + PartialEq> SourceSpec<S> {
    pub fn new(pmf: DiscretePmf<S>, block_length: usize) -> Result<Self> {
        if block_length < 1 {
            return Err(Error::validation("block length must be >= 1"));
        }
        Ok(Self { pmf, block_length })
    }

    pub fn pmf(&self) -> &DiscretePmf<S> {
        &self.pmf
    }

    pub fn block_length(&self) -> usize {
        self.block_length
    }

    /// The `block_length`-fold product pmf over symbol tuples.
    pub fn block_pmf(&self) -> Result<DiscretePmf<Vec<S>>> {
        let m = self.pmf.len();
        let weight = self.block_length as f64 * log2(m as f64);
        if weight > MAX_BLOCK_BITS {
            return Err(Error::Resource(format!(
                "block_length * log2(m) = {weight:.3} exceeds {MAX_BLOCK_BITS}"
            )));
        }
        let mut symbols: Vec<Vec<S>> = vec![Vec::new()];
        let mut probs = vec![1.0];
        for _ in 0..self.block_length {
            let mut ns = Vec::with_capacity(symbols.len() * m);
            let mut np = Vec::with_capacity(symbols.len() * m);
            for (prefix, &pp) in symbols.iter().zip(&probs) {
                for (s, p) in self.pmf.iter() {
                    let mut t = prefix.clone();
                    t.push(s.clone());
                    ns.push(t);
                    np.push(pp * p);
                }
            }
            symbols = ns;
            probs = np;
        }
        DiscretePmf::new(symbols, probs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockRate<S> {
    /// Average digits per source symbol.
    pub rate: f64,
    /// Source entropy per symbol.
    pub entropy: Bits,
    pub code: PrefixCode<Vec<S>>,
}

/// Optimal code over blocks, reported per source symbol.
pub fn block_code_rate<S: Clone + PartialEq>(src: &SourceSpec<S>) -> Result<BlockRate<S>> {
    let block = src.block_pmf()?;
    let code = build_optimal_code(&block);
    let rate = code.average_length(&block)? / src.block_length as f64;
    Ok(BlockRate {
        rate,
        entropy: entropy(&src.pmf),
        code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::two_dice_sum;

    #[test]
    fn naive_lengths() {
        let dice = two_dice_sum();
        let n = naive_code_length(&dice);
        assert!((n.fractional - 3.46).abs() < 0.005);
        assert_eq!(n.fixed, 4);
        let eight = DiscretePmf::uniform((0..8).collect::<Vec<u8>>()).unwrap();
        assert_eq!(naive_code_length(&eight).fractional, 3.0);
        assert_eq!(naive_code_length(&eight).fixed, 3);
        let one = DiscretePmf::from_probs(vec![1.0]).unwrap();
        assert_eq!(naive_code_length(&one).fractional, 0.0);
        assert_eq!(naive_code_length(&one).fixed, 0);
    }

    #[test]
    fn dyadic_source_reaches_entropy() {
        let pmf = DiscretePmf::new(vec!['a', 'b', 'c'], vec![0.5, 0.25, 0.25]).unwrap();
        let code = build_optimal_code(&pmf);
        assert_eq!(code.lengths(), vec![1, 2, 2]);
        assert_eq!(code.average_length(&pmf).unwrap(), 1.5);
        assert_eq!(entropy(&pmf).0, 1.5);
        assert_eq!(code.kraft_sum(), 1.0);
    }

    #[test]
    fn dice_code_length() {
        let dice = two_dice_sum();
        let code = build_optimal_code(&dice);
        let l = code.average_length(&dice).unwrap();
        // 119/36, frozen from an exhaustive search over complete length vectors
        assert!((l - 119.0 / 36.0).abs() < 1e-12, "{l}");
        assert!(code.is_prefix_free());
    }

    #[test]
    fn degenerate_source() {
        let pmf = DiscretePmf::new(vec!["only"], vec![1.0]).unwrap();
        let code = build_optimal_code(&pmf);
        assert!(code.average_length(&pmf).unwrap() <= 1.0);
        let enc = code.encode(&["only", "only"]).unwrap();
        assert_eq!(code.decode(&enc).unwrap(), vec!["only", "only"]);
    }

    #[test]
    fn tie_breaking_is_deterministic() {
        let pmf = DiscretePmf::uniform(vec!['a', 'b', 'c', 'd']).unwrap();
        let a = build_optimal_code(&pmf);
        let b = build_optimal_code(&pmf);
        assert_eq!(a, b);
        assert_eq!(a.lengths(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn block_rates() {
        let pmf = DiscretePmf::from_probs(vec![0.9, 0.1]).unwrap();
        let r1 = block_code_rate(&SourceSpec::new(pmf.clone(), 1).unwrap()).unwrap();
        assert_eq!(r1.rate, 1.0);
        let r4 = block_code_rate(&SourceSpec::new(pmf.clone(), 4).unwrap()).unwrap();
        assert_eq!(r4.code.entries().len(), 16);
        assert!(r4.rate >= r4.entropy.0 && r4.rate >= 0.469);
        assert!(r4.rate < r1.rate);

        let dice = two_dice_sum();
        let d1 = block_code_rate(&SourceSpec::new(dice.clone(), 1).unwrap()).unwrap();
        let d2 = block_code_rate(&SourceSpec::new(dice, 2).unwrap()).unwrap();
        assert_eq!(d2.code.entries().len(), 121);
        assert!(d2.rate < d1.rate);
    }

    #[test]
    fn block_tractability_bound() {
        let pmf = DiscretePmf::from_probs(vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            block_code_rate(&SourceSpec::new(pmf, 25).unwrap()),
            Err(Error::Resource(_))
        ));
        let pmf = DiscretePmf::from_probs(vec![1.0]).unwrap();
        assert!(SourceSpec::new(pmf, 0).is_err());
    }

    #[test]
    fn codec_round_trip_and_errors() {
        let dice = two_dice_sum();
        let code = build_optimal_code(&dice);
        assert_eq!(code.encode(&[]).unwrap(), "");
        assert!(code.decode("").unwrap().is_empty());
        let msg = [7, 2, 12, 7];
        let enc = code.encode(&msg).unwrap();
        let expected_len: usize = msg.iter().map(|s| code.codeword(s).unwrap().len()).sum();
        assert_eq!(enc.len(), expected_len);
        assert_eq!(code.decode(&enc).unwrap(), msg);
        assert!(matches!(code.encode(&[13]), Err(Error::Codec(_))));
        let dangling = &enc[..enc.len() - 1];
        assert!(matches!(code.decode(dangling), Err(Error::Codec(_))));
        assert!(matches!(code.decode("01x"), Err(Error::Codec(_))));
    }

    #[test]
    fn code_validation() {
        assert!(PrefixCode::new(vec![('a', "0".into()), ('b', "01".into())]).is_err());
        assert!(PrefixCode::new(vec![('a', "0".into()), ('b', "2".into())]).is_err());
        assert!(PrefixCode::new(vec![('a', "0".into()), ('a', "1".into())]).is_err());
        assert!(PrefixCode::new(vec![('a', "0".into()), ('b', "10".into())]).is_ok());
    }
}
