//! Multi-indices, index sets with prescribed heights, and box fillings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A tuple of positive integers `(k_1, …, k_l)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("index parts must be positive: {parts:?}")));
        }
        Ok(MultiIndex(parts))
    }

    /// Builds an index without checking positivity. Used for the flat
    /// value `(0)` and for contraction intermediates.
    pub fn from_raw(parts: Vec<u32>) -> Self {
        MultiIndex(parts)
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// `{k}^l`
    pub fn repeated(k: u32, l: usize) -> Self {
        MultiIndex(vec![k; l])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `#{j : k_j >= i + 1}`
    pub fn height(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&k| k > i).count() as u32
    }

    /// Drops the first part.
    pub fn tail(&self) -> Self {
        MultiIndex(self.0.get(1..).unwrap_or_default().to_vec())
    }

    /// Replaces the first part by `k_1 - 1`.
    pub fn lower_first(&self) -> Self {
        let mut p = self.0.clone();
        p[0] -= 1;
        MultiIndex(p)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s).trim();
        if inner.is_empty() {
            return Ok(MultiIndex::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad index part '{p}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(parts)
    }
}

/// Weight, depth and the first `r` heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexStats {
    pub weight: u32,
    pub depth: u32,
    pub heights: Vec<u32>,
}

pub fn stats(k: &MultiIndex, r: usize) -> IndexStats {
    IndexStats { weight: k.weight(), depth: k.depth() as u32, heights: (1..=r as u32).map(|i| k.height(i)).collect() }
}

/// Data `(k, l, h_1, …, h_r)` and a floor `j` on the first part
/// (`k_1 >= j + 2` when `j >= 0`; no constraint for `j = -1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightProfile {
    pub k: u32,
    pub l: u32,
    pub h: Vec<u32>,
    pub j: i32,
}

impl HeightProfile {
    /// Checks `l >= h_1 >= … >= h_r` and `-1 <= j <= r - 1`.
    pub fn new(k: u32, l: u32, h: Vec<u32>, j: i32) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::InvalidProfile("need at least one height (r >= 1)".into()));
        }
        let r = h.len() as i32;
        if j < -1 || j > r - 1 {
            return Err(Error::InvalidProfile(format!("j = {j} outside [-1, {}]", r - 1)));
        }
        if h[0] > l {
            return Err(Error::InvalidProfile(format!("h_1 = {} exceeds l = {l}", h[0])));
        }
        if let Some(w) = h.windows(2).position(|w| w[1] > w[0]) {
            return Err(Error::InvalidProfile(format!("heights not nonincreasing at h_{}: {h:?}", w + 1)));
        }
        Ok(HeightProfile { k, l, h, j })
    }

    pub fn r(&self) -> usize {
        self.h.len()
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.l == 0 && self.h.iter().all(|&x| x == 0)
    }

    /// Whether `k >= l + Σh`, the minimal weight for these heights.
    pub fn is_feasible(&self) -> bool {
        self.k >= self.l + self.h.iter().sum::<u32>()
    }
}

/// Indices in `I_j(k, l, h_1, …, h_r)` in lexicographic order.
pub fn enumerate_indices(p: &HeightProfile) -> Vec<MultiIndex> {
    let r = p.r();
    if p.l == 0 {
        return if p.is_zero() && p.j < 0 { vec![MultiIndex::empty()] } else { Vec::new() };
    }
    if !p.is_feasible() {
        return Vec::new();
    }
    // Parts equal to 1, to i+1 (0 < i < r), and >= r+1.
    let mut counts = vec![0u32; r + 1];
    counts[0] = p.l - p.h[0];
    for (i, c) in counts.iter_mut().enumerate().take(r).skip(1) {
        *c = p.h[i - 1] - p.h[i];
    }
    counts[r] = p.h[r - 1];
    let first_min = if p.j >= 0 { p.j as u32 + 2 } else { 1 };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p.l as usize);
    fill(p.k, first_min, &mut counts, &mut cur, &mut out);
    out
}

fn fill(left: u32, min_here: u32, counts: &mut [u32], cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    let r = counts.len() - 1;
    let slots: u32 = counts.iter().sum();
    if slots == 0 {
        if left == 0 {
            out.push(MultiIndex(cur.clone()));
        }
        return;
    }
    for v in min_here.max(1)..=left {
        let class = ((v - 1) as usize).min(r);
        if counts[class] == 0 {
            continue;
        }
        counts[class] -= 1;
        let rem = left - v;
        let min_rest: u32 = counts.iter().enumerate().map(|(c, &n)| n * (c as u32 + 1)).sum();
        let open_ended = counts[r] > 0;
        if rem >= min_rest && (open_ended || rem == min_rest) {
            cur.push(v);
            fill(rem, 1, counts, cur, out);
            cur.pop();
        }
        counts[class] += 1;
    }
}

/// All compositions of `total` into `parts` positive parts, lexicographic.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < parts as u32 {
            return;
        }
        for v in 1..=left - (parts as u32 - 1) {
            cur.push(v);
            rec(left - v, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Every nonempty index of weight at most `max_weight`.
pub fn indices_up_to_weight(max_weight: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        for l in 1..=w as usize {
            out.extend(compositions(w, l).into_iter().map(MultiIndex));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoxFill {
    Comma,
    Plus,
    MinusPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `","` or `"+"`
    Two,
    /// `","`, `"+"` or `"-1+"`
    Three,
}

impl Alphabet {
    fn letters(self) -> &'static [BoxFill] {
        match self {
            Alphabet::Two => &[BoxFill::Comma, BoxFill::Plus],
            Alphabet::Three => &[BoxFill::Comma, BoxFill::Plus, BoxFill::MinusPlus],
        }
    }
}

/// A base index with its `dep - 1` boxes filled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub base: MultiIndex,
    pub boxes: Vec<BoxFill>,
}

impl Pattern {
    pub fn t_exponent(&self) -> u32 {
        self.boxes.iter().filter(|b| **b != BoxFill::Comma).count() as u32
    }

    pub fn contract(&self) -> Result<MultiIndex> {
        let parts = self.base.parts();
        let Some((&first, rest)) = parts.split_first() else {
            return Ok(MultiIndex::empty());
        };
        let mut out = Vec::with_capacity(parts.len());
        let mut acc = first as i64;
        for (b, &k) in self.boxes.iter().zip(rest) {
            match b {
                BoxFill::Comma => {
                    out.push(acc);
                    acc = k as i64;
                }
                BoxFill::Plus => acc += k as i64,
                BoxFill::MinusPlus => acc += k as i64 - 1,
            }
        }
        out.push(acc);
        if out.iter().any(|&p| p <= 0) {
            return Err(Error::InvalidContraction);
        }
        Ok(MultiIndex(out.into_iter().map(|p| p as u32).collect()))
    }
}

/// Contracted indices with their `t`-exponents, one per valid filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    pub entries: Vec<(MultiIndex, u32)>,
    /// Fillings whose contraction produced a non-positive part.
    pub rejected: usize,
}

pub fn enumerate_patterns(k: &MultiIndex, alphabet: Alphabet) -> PatternSet {
    if k.is_empty() {
        return PatternSet { entries: vec![(MultiIndex::empty(), 0)], rejected: 0 };
    }
    let letters = alphabet.letters();
    let nboxes = k.depth() - 1;
    let total = letters.len().pow(nboxes as u32);
    let mut entries = Vec::with_capacity(total);
    let mut rejected = 0;
    for code in 0..total {
        let mut c = code;
        let mut boxes = vec![BoxFill::Comma; nboxes];
        for b in boxes.iter_mut().rev() {
            *b = letters[c % letters.len()];
            c /= letters.len();
        }
        let pat = Pattern { base: k.clone(), boxes };
        match pat.contract() {
            Ok(p) => entries.push((p, pat.t_exponent())),
            Err(_) => rejected += 1,
        }
    }
    PatternSet { entries, rejected }
}

/// Consecutive block sums `(k_{I_1}, …, k_{I_c})`.
pub fn block_sums(k: &MultiIndex, composition: &[u32]) -> Result<MultiIndex> {
    let bad = || Error::BadComposition { composition: composition.to_vec(), depth: k.depth() };
    if composition.contains(&0) || composition.iter().sum::<u32>() as usize != k.depth() {
        return Err(bad());
    }
    let mut out = Vec::with_capacity(composition.len());
    let mut pos = 0;
    for &c in composition {
        out.push(k.0[pos..pos + c as usize].iter().sum());
        pos += c as usize;
    }
    Ok(MultiIndex(out))
}
