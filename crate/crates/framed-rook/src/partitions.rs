//! Set partitions, the join lattice, partition-monoid concatenation and
//! framed (coloured) partitions. Vertices are 1-based in the public API.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::ring::FpScalar;

/// A set partition of [size], stored as a restricted growth string:
/// block ids are numbered in order of their minimum element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetPartition {
    block: Vec<u32>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl SetPartition {
    /// Canonicalize arbitrary labels (0-based vertices).
    fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let block = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        SetPartition { block }
    }

    pub fn singletons(size: usize) -> Self {
        SetPartition { block: (0..size as u32).collect() }
    }

    /// Blocks given with 1-based vertices; every vertex of [size] must appear once.
    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; size];
        for (b, blk) in blocks.iter().enumerate() {
            for &v in blk {
                if v == 0 || v > size {
                    return Err(Error::IndexOutOfRange { index: v, n: size });
                }
                if label[v - 1] != usize::MAX {
                    return Err(Error::Parse(format!("vertex {v} appears twice")));
                }
                label[v - 1] = b;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Parse(format!("vertex {} is not covered", v + 1)));
        }
        Ok(Self::from_labels(&label))
    }

    /// Parse the "{1,8|2,5,9|3}" form.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(|| Error::Parse(s.into()))?;
        let mut blocks = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split('|') {
                let blk = part
                    .split(',')
                    .map(|v| v.trim().parse::<usize>().map_err(|_| Error::Parse(s.into())))
                    .collect::<Result<Vec<_>>>()?;
                blocks.push(blk);
            }
        }
        let size = blocks.iter().map(|b| b.len()).sum();
        Self::from_blocks(size, &blocks)
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.block.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks in canonical order, each sorted, 1-based.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (v, &b) in self.block.iter().enumerate() {
            out[b as usize].push(v + 1);
        }
        out
    }

    /// The block containing vertex `v` (1-based).
    pub fn block_of(&self, v: usize) -> Vec<usize> {
        let b = self.block[v - 1];
        (0..self.size()).filter(|&w| self.block[w] == b).map(|w| w + 1).collect()
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block[a - 1] == self.block[b - 1]
    }

    /// Add singletons up to `size`.
    pub fn extend(&self, size: usize) -> Self {
        let mut block = self.block.clone();
        let mut next = self.num_blocks() as u32;
        while block.len() < size {
            block.push(next);
            next += 1;
        }
        SetPartition { block }
    }

    /// Restriction to a subset (1-based, any order); the result lives on
    /// [subset.len()] with vertices renumbered in increasing order.
    pub fn restrict(&self, subset: &[usize]) -> Self {
        let mut s: Vec<usize> = subset.to_vec();
        s.sort_unstable();
        let labels: Vec<u32> = s.iter().map(|&v| self.block[v - 1]).collect();
        Self::from_labels(&labels)
    }

    /// Finest partition coarser than both; the smaller one is extended by singletons.
    pub fn join(&self, other: &SetPartition) -> SetPartition {
        let size = self.size().max(other.size());
        let (a, b) = (self.extend(size), other.extend(size));
        let mut uf = UnionFind::new(size);
        for p in [&a, &b] {
            let mut first: BTreeMap<u32, usize> = BTreeMap::new();
            for (v, &blk) in p.block.iter().enumerate() {
                match first.get(&blk) {
                    Some(&w) => uf.union(w, v),
                    None => {
                        first.insert(blk, v);
                    }
                }
            }
        }
        let labels: Vec<usize> = (0..size).map(|v| uf.find(v)).collect();
        Self::from_labels(&labels)
    }

    /// Standard arcs {q_i, q_(i+1)} of every block, in canonical order.
    pub fn standard_arcs(&self) -> Vec<(usize, usize)> {
        self.blocks().iter().flat_map(|b| b.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()).collect()
    }

    pub fn is_partial_brauer(&self) -> bool {
        self.blocks().iter().all(|b| b.len() <= 2)
    }

    /// All set partitions of [size], by restricted growth strings.
    pub fn all(size: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(size);
        fn rec(size: usize, cur: &mut Vec<u32>, maxb: u32, out: &mut Vec<SetPartition>) {
            if cur.len() == size {
                out.push(SetPartition { block: cur.clone() });
                return;
            }
            for b in 0..=maxb {
                cur.push(b);
                rec(size, cur, if b == maxb { maxb + 1 } else { maxb }, out);
                cur.pop();
            }
        }
        rec(size, &mut cur, 0, &mut out);
        out
    }

    /// e_(i,j) in P_n: the only non-singleton block is {i, j}.
    pub fn e(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::IndexOutOfRange { index: i.max(j), n });
        }
        let mut blocks: Vec<Vec<usize>> = (1..=n).filter(|&v| v != i && v != j).map(|v| vec![v]).collect();
        blocks.push(vec![i, j]);
        Self::from_blocks(n, &blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

/// Bell numbers by the Bell triangle.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

// ---- the partition monoid on [2n] ----

/// Identity of the partition monoid: vertical lines {i, n+i}.
pub fn diagram_identity(n: usize) -> SetPartition {
    let blocks: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, n + i]).collect();
    SetPartition::from_blocks(2 * n, &blocks).unwrap()
}

/// Partition of [2n] with lines {i, n + i sigma}, where `image[i-1]` is
/// i sigma (0 when undefined).
pub fn diagram_from_word(image: &[usize]) -> Result<SetPartition> {
    let n = image.len();
    let mut blocks = Vec::new();
    let mut hit = vec![false; n];
    for (i, &j) in image.iter().enumerate() {
        if j == 0 {
            blocks.push(vec![i + 1]);
        } else {
            if j > n || hit[j - 1] {
                return Err(Error::Parse(format!("bad partial permutation word {image:?}")));
            }
            hit[j - 1] = true;
            blocks.push(vec![i + 1, n + j]);
        }
    }
    for (j, h) in hit.iter().enumerate() {
        if !h {
            blocks.push(vec![n + j + 1]);
        }
    }
    SetPartition::from_blocks(2 * n, &blocks)
}

fn half(p: &SetPartition) -> Result<usize> {
    if p.size() % 2 != 0 {
        return Err(Error::SizeMismatch(p.size(), p.size() + 1));
    }
    Ok(p.size() / 2)
}

/// Glue the bottom row of `i` to the top row of `j` and forget the middle.
/// Returns the product together with the union-find labels of all 3n vertices
/// (top 0..n, middle n..2n, bottom 2n..3n).
fn glue(i: &SetPartition, j: &SetPartition) -> Result<(SetPartition, Vec<usize>)> {
    let n = half(i)?;
    if half(j)? != n {
        return Err(Error::SizeMismatch(i.size(), j.size()));
    }
    // I on (top, middle), J on (middle, bottom)
    let place_i = |v: usize| v;
    let place_j = |v: usize| v + n;
    let mut uf = UnionFind::new(3 * n);
    for (p, place) in [(i, &place_i as &dyn Fn(usize) -> usize), (j, &place_j)] {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        for (v, &blk) in p.block.iter().enumerate() {
            let w = place(v);
            match first.get(&blk) {
                Some(&u) => uf.union(u, w),
                None => {
                    first.insert(blk, w);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..3 * n).map(|v| uf.find(v)).collect();
    let outer: Vec<usize> = (0..n).chain(2 * n..3 * n).map(|v| roots[v]).collect();
    Ok((SetPartition::from_labels(&outer), roots))
}

/// The partition-monoid product I * J.
pub fn concatenate(i: &SetPartition, j: &SetPartition) -> Result<SetPartition> {
    glue(i, j).map(|(p, _)| p)
}

/// Swap the two rows.
pub fn transpose(p: &SetPartition) -> Result<SetPartition> {
    let n = half(p)?;
    let labels: Vec<u32> = (0..2 * n).map(|v| p.block[if v < n { v + n } else { v - n }]).collect();
    Ok(SetPartition::from_labels(&labels))
}

/// Top vertices whose block reaches the bottom row.
pub fn domain(p: &SetPartition) -> Result<BTreeSet<usize>> {
    let n = half(p)?;
    let bottom: HashSet<u32> = p.block[n..].iter().copied().collect();
    Ok((0..n).filter(|&v| bottom.contains(&p.block[v])).map(|v| v + 1).collect())
}

/// Bottom vertices (numbered 1..n) whose block reaches the top row.
pub fn codomain(p: &SetPartition) -> Result<BTreeSet<usize>> {
    let n = half(p)?;
    let top: HashSet<u32> = p.block[..n].iter().copied().collect();
    Ok((0..n).filter(|&v| top.contains(&p.block[n + v])).map(|v| v + 1).collect())
}

/// A set partition whose standard arcs carry unit labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredPartition {
    partition: SetPartition,
    colors: BTreeMap<(usize, usize), FpScalar>,
}

impl ColoredPartition {
    /// Missing arcs are coloured 1. Zero labels and unknown arcs are rejected.
    pub fn new(partition: SetPartition, q: u32, colors: BTreeMap<(usize, usize), FpScalar>) -> Result<Self> {
        let arcs = partition.standard_arcs();
        for (arc, c) in &colors {
            if !arcs.contains(arc) {
                return Err(Error::Parse(format!("{arc:?} is not a standard arc of {partition}")));
            }
            if c.is_zero() {
                return Err(Error::NotAUnit);
            }
        }
        let colors = arcs.into_iter().map(|a| (a, colors.get(&a).copied().unwrap_or(FpScalar::new(1, q)))).collect();
        Ok(ColoredPartition { partition, colors })
    }

    pub fn trivial(partition: SetPartition, q: u32) -> Self {
        Self::new(partition, q, BTreeMap::new()).unwrap()
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn colors(&self) -> &BTreeMap<(usize, usize), FpScalar> {
        &self.colors
    }

    pub fn color(&self, arc: (usize, usize)) -> Option<FpScalar> {
        self.colors.get(&arc).copied()
    }

    pub fn transpose(&self) -> Result<Self> {
        let n = half(&self.partition)?;
        let star = |v: usize| if v <= n { v + n } else { v - n };
        let t = transpose(&self.partition)?;
        let q = self.colors.values().next().map_or(2, |c| c.modulus());
        // every standard arc of a partial Brauer diagram is a whole block
        let mut colors = BTreeMap::new();
        for (&(a, b), &c) in &self.colors {
            let (x, y) = (star(a), star(b));
            colors.insert((x.min(y), x.max(y)), c);
        }
        Self::new(t, q, colors)
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        let labels: Vec<String> =
            self.colors.iter().filter(|(_, c)| !c.is_one()).map(|((a, b), c)| format!("{a}-{b}={c}")).collect();
        if !labels.is_empty() {
            write!(f, " {}", labels.join(" "))?;
        }
        Ok(())
    }
}

/// Framed product: each arc of the result is coloured by the product of the
/// colours of all arcs merged into it.
pub fn concatenate_colored(x: &ColoredPartition, y: &ColoredPartition) -> Result<ColoredPartition> {
    for p in [&x.partition, &y.partition] {
        if let Some(b) = p.blocks().iter().find(|b| b.len() > 2) {
            return Err(Error::NotPartialBrauer(b.len()));
        }
    }
    let n = half(&x.partition)?;
    let q = x.colors.values().chain(y.colors.values()).next().map_or(2, |c| c.modulus());
    let (product, roots) = glue(&x.partition, &y.partition)?;
    let mut by_root: BTreeMap<usize, FpScalar> = BTreeMap::new();
    let mut absorb = |root: usize, c: FpScalar| {
        let e = by_root.entry(root).or_insert(FpScalar::new(1, q));
        *e = *e * c;
    };
    for (&(a, _), &c) in &x.colors {
        absorb(roots[a - 1], c);
    }
    for (&(a, _), &c) in &y.colors {
        absorb(roots[a - 1 + n], c);
    }
    let mut colors = BTreeMap::new();
    for (a, b) in product.standard_arcs() {
        let place = |v: usize| if v <= n { v - 1 } else { v - 1 + n };
        let root = roots[place(a)];
        debug_assert_eq!(root, roots[place(b)]);
        colors.insert((a, b), by_root.get(&root).copied().unwrap_or(FpScalar::new(1, q)));
    }
    ColoredPartition::new(product, q, colors)
}

/// The framed generator a_i: identity diagram with the i-th line coloured `a`.
pub fn colored_a(n: usize, i: usize, a: FpScalar) -> Result<ColoredPartition> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let mut colors = BTreeMap::new();
    colors.insert((i, n + i), a);
    ColoredPartition::new(diagram_identity(n), a.modulus(), colors)
}

/// Checks the idempotent, commutation and triangle relations of the e_(i,j)
/// under join, and that they generate every set partition of [n].
pub fn verify_pn_presentation(n: usize) -> Result<Report> {
    crate::error::guard("P_n presentation size n", n as u128, 5)?;
    let mut report = Report::new("partitions", &[("n", n.to_string())]);
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let e = |i, j| SetPartition::e(n, i, j).unwrap();

    let mut bad = Vec::new();
    for &(i, j) in &pairs {
        if e(i, j).join(&e(i, j)) != e(i, j) {
            bad.push(format!("e_{i},{j}"));
        }
    }
    report.push(Check::from_failures("idempotent generators", "e_{i,j}^2 = e_{i,j}", pairs.len(), bad));

    let mut bad = Vec::new();
    for &(i, j) in &pairs {
        for &(r, s) in &pairs {
            if e(i, j).join(&e(r, s)) != e(r, s).join(&e(i, j)) {
                bad.push(format!("e_{i},{j} e_{r},{s}"));
            }
        }
    }
    report.push(Check::from_failures(
        "commuting generators",
        "e_{i,j} e_{r,s} = e_{r,s} e_{i,j}",
        pairs.len() * pairs.len(),
        bad,
    ));

    let mut bad = Vec::new();
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                count += 1;
                let a = e(i, j).join(&e(i, k));
                let b = e(i, j).join(&e(j, k));
                let c = e(i, k).join(&e(j, k));
                if a != b || b != c {
                    bad.push(format!("({i},{j},{k})"));
                }
            }
        }
    }
    report.push(Check::from_failures("triangle relation", "e_{i,j} e_{i,k} = e_{i,j} e_{j,k} = e_{i,k} e_{j,k}", count, bad));

    // closure of the generators under join, starting from the identity
    let mut seen: HashSet<SetPartition> = HashSet::new();
    let mut frontier = vec![SetPartition::singletons(n)];
    seen.insert(SetPartition::singletons(n));
    while let Some(p) = frontier.pop() {
        for &(i, j) in &pairs {
            let next = p.join(&e(i, j));
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let all: HashSet<SetPartition> = SetPartition::all(n).into_iter().collect();
    let expected = bell(n) as usize;
    report.push(Check::new(
        "closure is all of P_n",
        "|P_n| = Bell(n)",
        seen == all && seen.len() == expected,
        format!("closure {} / enumerated {} / Bell {}", seen.len(), all.len(), expected),
    ));
    Ok(report)
}
