//! Matrices over F_q, the generalized rook monoid Q of matrices with at most
//! one nonzero entry per row and column, and its length function.
//!
//! Row vectors are multiplied on the left, so the matrix with a nonzero
//! entry at (i, j) is the line i -> j and matrix products compose left to
//! right, exactly like `FramedPartial`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::framed::{FramedPartial, Gen};
use crate::perm;
use crate::ring::{FpScalar, PrimeField};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RookMatrix {
    n: usize,
    q: u32,
    /// Row-major residues.
    entries: Vec<u8>,
}

impl RookMatrix {
    pub fn zero(n: usize, q: u32) -> Self {
        RookMatrix { n, q, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize, q: u32) -> Self {
        let mut m = Self::zero(n, q);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(q: u32, rows: &[Vec<i64>]) -> Result<Self> {
        PrimeField::new(q)?;
        let n = rows.len();
        let mut m = Self::zero(n, q);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Ragged { row: i, len: row.len(), expected: n });
            }
            for (j, &v) in row.iter().enumerate() {
                m.entries[i * n + j] = v.rem_euclid(q as i64) as u8;
            }
        }
        Ok(m)
    }

    /// Inverse of `code`.
    pub fn from_code(n: usize, q: u32, mut code: u64) -> Self {
        let mut m = Self::zero(n, q);
        for e in m.entries.iter_mut() {
            *e = (code % q as u64) as u8;
            code /= q as u64;
        }
        m
    }

    /// Base-q integer whose digits are the entries (row-major, least significant
    /// first). Only meaningful while q^(n^2) fits in 64 bits.
    pub fn code(&self) -> u64 {
        self.entries.iter().rev().fold(0u64, |acc, &e| acc * self.q as u64 + e as u64)
    }

    /// Parse "0 0 1; 1 0 0; 0 1 0".
    pub fn parse(s: &str, q: u32) -> Result<Self> {
        let rows: Vec<Vec<i64>> = s
            .split(';')
            .map(|r| r.split_whitespace().map(|t| t.parse().map_err(|_| Error::Parse(format!("bad entry {t:?}")))).collect())
            .collect::<Result<_>>()?;
        Self::from_rows(q, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Entry (i, j), 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)] as u32
    }

    pub fn entry(&self, i: usize, j: usize) -> FpScalar {
        FpScalar::new(self.get(i, j) as i64, self.q)
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[(i - 1) * self.n + (j - 1)] = v.rem_euclid(self.q as i64) as u8;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let q = self.q;
        let mut out = Self::zero(n, q);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[k * n + j] as u32;
                    if b != 0 {
                        let e = &mut out.entries[i * n + j];
                        *e = ((*e as u32 + a * b) % q) as u8;
                    }
                }
            }
        }
        out
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// `code` of self * other without allocating.
    pub fn product_code(&self, other: &Self) -> u64 {
        let (n, q) = (self.n, self.q as u64);
        let mut code = 0u64;
        let mut place = 1u64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.entries[i * n + k] as u64 * other.entries[k * n + j] as u64;
                }
                code += (acc % q) * place;
                place *= q;
            }
        }
        code
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n, self.q);
        for i in 1..=self.n {
            for j in 1..=self.n {
                t.set(j, i, self.get(i, j) as i64);
            }
        }
        t
    }

    /// The 0/1 matrix marking nonzero positions.
    pub fn support(&self) -> Self {
        RookMatrix { n: self.n, q: self.q, entries: self.entries.iter().map(|&e| (e != 0) as u8).collect() }
    }

    pub fn is_diagonal(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn is_invertible_diagonal(&self) -> bool {
        self.is_diagonal() && (1..=self.n).all(|i| self.get(i, i) != 0)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (1..=self.n).all(|i| {
            (1..=self.n).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Greater => self.get(i, j) == 0,
                std::cmp::Ordering::Equal => self.get(i, j) == 1,
                std::cmp::Ordering::Less => true,
            })
        })
    }

    pub fn is_rook(&self) -> bool {
        self.entries.iter().all(|&e| e <= 1) && q_membership(self).is_ok()
    }

    pub fn diag(q: u32, d: &[i64]) -> Self {
        let mut m = Self::zero(d.len(), q);
        for (i, &v) in d.iter().enumerate() {
            m.set(i + 1, i + 1, v);
        }
        m
    }

    pub fn diagonal(&self) -> Vec<u32> {
        (1..=self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.n, self.q), |acc, _| acc.mul(self))
    }

    /// Inverse of an invertible diagonal matrix.
    pub fn diag_inverse(&self) -> Result<Self> {
        let mut out = Self::zero(self.n, self.q);
        for i in 1..=self.n {
            out.set(i, i, self.entry(i, i).inv()?.residue() as i64);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for RookMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An element of Q with its cached combinatorial data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalQ {
    pub matrix: RookMatrix,
    pub support: RookMatrix,
    /// Nonzero rows I, ascending.
    pub rows: Vec<usize>,
    /// Nonzero columns J, ascending.
    pub cols: Vec<usize>,
    pub rank: usize,
    pub length: usize,
    /// Image word of the permutation extending i -> i sigma order-preservingly off I.
    pub hat: Vec<usize>,
    /// `image[i-1]` = i sigma, 0 off I.
    pub image: Vec<usize>,
}

impl PartialOrd for CanonicalQ {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalQ {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.matrix.cmp(&other.matrix)
    }
}

/// Accept `m` iff it has at most one nonzero entry in each row and column.
pub fn q_membership(m: &RookMatrix) -> Result<CanonicalQ> {
    let n = m.n;
    let mut image = vec![0usize; n];
    let mut col_seen = vec![false; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            if m.get(i, j) != 0 {
                if image[i - 1] != 0 {
                    return Err(Error::RowConflict(i));
                }
                if col_seen[j] {
                    return Err(Error::ColumnConflict(j));
                }
                image[i - 1] = j;
                col_seen[j] = true;
            }
        }
    }
    let rows: Vec<usize> = (1..=n).filter(|&i| image[i - 1] != 0).collect();
    let cols: Vec<usize> = (1..=n).filter(|&j| col_seen[j]).collect();
    let r = rows.len();
    let free_cols: Vec<usize> = (1..=n).filter(|&j| !col_seen[j]).collect();
    let mut hat = image.clone();
    for (k, i) in (1..=n).filter(|&i| image[i - 1] == 0).enumerate() {
        hat[i - 1] = free_cols[k];
    }
    let inv = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| image[a] != 0 && image[b] != 0 && image[a] > image[b])
        .count();
    let tri = r * r.saturating_sub(1) / 2;
    let m_l = rows.iter().map(|&i| i - 1).sum::<usize>() - tri;
    let m_r = cols.iter().map(|&j| n - j).sum::<usize>() - tri;
    Ok(CanonicalQ {
        matrix: m.clone(),
        support: m.support(),
        rows,
        cols,
        rank: r,
        length: inv + m_l + m_r,
        hat,
        image,
    })
}

impl CanonicalQ {
    pub fn n(&self) -> usize {
        self.matrix.n
    }

    pub fn q(&self) -> u32 {
        self.matrix.q
    }

    /// i sigma for i in I.
    pub fn apply(&self, i: usize) -> Option<usize> {
        match self.image[i - 1] {
            0 => None,
            j => Some(j),
        }
    }

    /// sigma j: the row whose entry sits in column j.
    pub fn preimage(&self, j: usize) -> Option<usize> {
        self.image.iter().position(|&x| x == j).map(|i| i + 1)
    }

    pub fn in_rows(&self, i: usize) -> bool {
        self.image[i - 1] != 0
    }

    pub fn in_cols(&self, j: usize) -> bool {
        self.cols.binary_search(&j).is_ok()
    }

    pub fn to_text(&self) -> String {
        self.matrix.to_text()
    }

    pub fn n_inv(&self) -> usize {
        inversion_sets(self).inv.len()
    }

    pub fn m_left(&self) -> usize {
        let tri = self.rank * self.rank.saturating_sub(1) / 2;
        self.rows.iter().map(|&i| i - 1).sum::<usize>() - tri
    }

    pub fn m_right(&self) -> usize {
        let tri = self.rank * self.rank.saturating_sub(1) / 2;
        self.cols.iter().map(|&j| self.n() - j).sum::<usize>() - tri
    }
}

impl fmt::Display for CanonicalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.matrix.to_text())
    }
}

pub fn canon(m: &RookMatrix) -> CanonicalQ {
    q_membership(m).expect("matrix lies in Q")
}

/// (t_I, support, t_J) with sigma = t_I support = support t_J, both diagonals 1 off I resp. J.
pub fn t_decompose(s: &CanonicalQ) -> (RookMatrix, RookMatrix, RookMatrix) {
    let (n, q) = (s.n(), s.q());
    let mut t_i = RookMatrix::identity(n, q);
    let mut t_j = RookMatrix::identity(n, q);
    for &i in &s.rows {
        let j = s.image[i - 1];
        let v = s.matrix.get(i, j) as i64;
        t_i.set(i, i, v);
        t_j.set(j, j, v);
    }
    (t_i, s.support.clone(), t_j)
}

/// sigma restricted to the rows I and the columns J, an r x r monomial matrix.
pub fn compressed(s: &CanonicalQ) -> RookMatrix {
    let mut m = RookMatrix::zero(s.rank, s.q());
    for (a, &i) in s.rows.iter().enumerate() {
        for (b, &j) in s.cols.iter().enumerate() {
            m.set(a + 1, b + 1, s.matrix.get(i, j) as i64);
        }
    }
    m
}

pub fn length(s: &CanonicalQ) -> usize {
    s.length
}

pub type Pairs = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionSets {
    pub inv: Pairs,
    pub inv_l: Pairs,
    pub inv_r: Pairs,
    /// `i[a][b]` is I_{a,b}.
    pub i: [[Pairs; 2]; 2],
    pub j: [[Pairs; 2]; 2],
}

pub fn format_pairs(p: &[(usize, usize)]) -> String {
    let inner: Vec<String> = p.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn inversion_sets(s: &CanonicalQ) -> InversionSets {
    let n = s.n();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    let mut i: [[Pairs; 2]; 2] = Default::default();
    let mut j: [[Pairs; 2]; 2] = Default::default();
    let mut inv = Vec::new();
    for &(a, b) in &pairs {
        let (ia, ib) = (s.in_rows(a) as usize, s.in_rows(b) as usize);
        i[ia][ib].push((a, b));
        let (ja, jb) = (s.in_cols(a) as usize, s.in_cols(b) as usize);
        j[ja][jb].push((a, b));
        if ia == 1 && ib == 1 && s.image[a - 1] > s.image[b - 1] {
            inv.push((a, b));
        }
    }
    InversionSets { inv, inv_l: i[0][1].clone(), inv_r: j[1][0].clone(), i, j }
}

pub fn to_framed(s: &CanonicalQ) -> FramedPartial {
    let labels: Vec<u32> = (1..=s.n()).map(|i| s.apply(i).map_or(0, |j| s.matrix.get(i, j))).collect();
    FramedPartial::new(s.q(), &s.image, &labels).expect("rook data is a framed partial permutation")
}

pub fn from_framed(x: &FramedPartial) -> CanonicalQ {
    let mut m = RookMatrix::zero(x.n(), x.q());
    for i in x.domain() {
        m.set(i, x.apply(i).unwrap(), x.label(i).unwrap().residue() as i64);
    }
    canon(&m)
}

/// The matrix of a generator of F_q(I_n).
pub fn generator_matrix(g: Gen, n: usize, q: u32) -> Result<RookMatrix> {
    let x = crate::framed::generator(g, n, q)?;
    Ok(from_framed(&x).matrix)
}

pub fn word_matrix(word: &[Gen], n: usize, q: u32) -> Result<RookMatrix> {
    Ok(from_framed(&crate::framed::evaluate_word(word, n, q)?).matrix)
}

pub fn s_matrix(n: usize, q: u32, k: usize) -> Result<RookMatrix> {
    generator_matrix(Gen::S(k), n, q)
}

pub fn nu_matrix(n: usize, q: u32) -> RookMatrix {
    let mut m = RookMatrix::zero(n, q);
    for i in 1..n {
        m.set(i, i + 1, 1);
    }
    m
}

/// v_r = E_{1,1+n-r} + ... + E_{r,n}.
pub fn v_r(n: usize, q: u32, r: usize) -> RookMatrix {
    nu_matrix(n, q).pow(n - r)
}

/// x_{i,j}(r) = 1 + r E_{i,j}, i != j.
pub fn x_matrix(n: usize, q: u32, i: usize, j: usize, r: i64) -> Result<RookMatrix> {
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::IndexOutOfRange { index: i.max(j), n });
    }
    let mut m = RookMatrix::identity(n, q);
    m.set(i, j, r);
    Ok(m)
}

/// h_k(r) = 1 + (-r^{-1} - 1) E_{k,k} + (r - 1) E_{k+1,k+1}.
pub fn h_matrix(n: usize, q: u32, k: usize, r: FpScalar) -> Result<RookMatrix> {
    if r.is_zero() {
        return Err(Error::ZeroParameter);
    }
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let mut m = RookMatrix::identity(n, q);
    m.set(k, k, -(r.inv()?.residue() as i64));
    m.set(k + 1, k + 1, r.residue() as i64);
    Ok(m)
}

/// h^s_k(r) = s_k h_k(r) s_k.
pub fn hs_matrix(n: usize, q: u32, k: usize, r: FpScalar) -> Result<RookMatrix> {
    let s = s_matrix(n, q, k)?;
    Ok(s.mul(&h_matrix(n, q, k, r)?).mul(&s))
}

/// a_i = 1 + (a^e - 1) E_{i,i}.
pub fn a_matrix(n: usize, q: u32, i: usize, e: i64) -> Result<RookMatrix> {
    let f = PrimeField::new(q)?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let mut m = RookMatrix::identity(n, q);
    m.set(i, i, f.gen_pow(e).residue() as i64);
    Ok(m)
}

/// All of Q, sorted.
pub fn enumerate_q(n: usize, q: u32) -> Result<Vec<CanonicalQ>> {
    let mut v: Vec<CanonicalQ> = crate::framed::enumerate(n, q, None)?.iter().map(from_framed).collect();
    v.sort();
    Ok(v)
}

/// The rook monoid R (0/1 entries), sorted.
pub fn enumerate_r(n: usize, q: u32) -> Result<Vec<CanonicalQ>> {
    Ok(enumerate_q(n, q)?.into_iter().filter(|s| s.matrix == s.support).collect())
}

/// Length by definition: fewest simple transpositions applied on either side
/// that carry the support of `s` to v_r (breadth-first search).
pub fn bfs_length(s: &CanonicalQ) -> usize {
    let (n, q) = (s.n(), s.q());
    let target = v_r(n, q, s.rank);
    let gens: Vec<RookMatrix> = (1..n).map(|k| s_matrix(n, q, k).unwrap()).collect();
    let start = s.support.clone();
    let mut dist: HashMap<RookMatrix, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if x == target {
            return d;
        }
        for g in &gens {
            for y in [g.mul(&x), x.mul(g)] {
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    unreachable!("W x W acts transitively on each rank")
}

/// sigma = u f nu^k w with u, w permutations, f = a_1^{m_1} ... a_{n-k}^{m_{n-k}}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatFactor {
    pub u: Vec<usize>,
    pub m: Vec<u32>,
    pub k: usize,
    pub w: Vec<usize>,
}

impl BruhatFactor {
    pub fn to_word(&self) -> Vec<Gen> {
        let mut word: Vec<Gen> = self.u.iter().map(|&k| Gen::S(k)).collect();
        for (j, &mj) in self.m.iter().enumerate() {
            word.extend(std::iter::repeat(Gen::A(j + 1)).take(mj as usize));
        }
        word.extend(std::iter::repeat(Gen::Nu).take(self.k));
        word.extend(self.w.iter().map(|&k| Gen::S(k)));
        word
    }
}

fn s_word_text(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|k| format!("s_{k}")).collect()
    }
}

impl fmt::Display for BruhatFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: String = self
            .m
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(j, &m)| if m == 1 { format!("a_{}", j + 1) } else { format!("a_{}^{m}", j + 1) })
            .collect();
        let a = if a.is_empty() { "1".to_string() } else { a };
        write!(f, "{} · {} · ν^{} · {}", s_word_text(&self.u), a, self.k, s_word_text(&self.w))
    }
}

/// sigma = u f nu^k w with u = omega_A sigma*, w = omega-bar_B and the
/// labels of f listed in column order.
pub fn bruhat_factor(s: &CanonicalQ) -> BruhatFactor {
    let x = to_framed(s);
    let nf = crate::framed::normal_form(&x);
    let (n, r) = (s.n(), s.rank);
    let simple = |w: Vec<Gen>| -> Vec<usize> {
        w.into_iter()
            .map(|g| match g {
                Gen::S(k) => k,
                _ => unreachable!(),
            })
            .collect()
    };
    let mut u = simple(crate::framed::omega(&nf.a));
    u.extend(perm::reduced_word(&nf.star));
    // after sigma* the p-th line is the one ending at b_p
    let m = nf
        .b
        .iter()
        .map(|&j| {
            let i = (1..=n).find(|&i| s.apply(i) == Some(j)).unwrap();
            x.label(i).unwrap().log().expect("labels are units")
        })
        .collect();
    BruhatFactor { u, m, k: n - r, w: simple(crate::framed::omega_bar(n, &nf.b)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framed::evaluate_word;

    fn example_sigma() -> CanonicalQ {
        canon(&RookMatrix::parse("0 0 0 0 0; 0 0 0 0 2; 5 0 0 0 0; 0 0 3 0 0; 0 0 0 0 0", 7).unwrap())
    }

    #[test]
    fn membership() {
        let z = q_membership(&RookMatrix::zero(3, 3)).unwrap();
        assert_eq!(z.rank, 0);
        assert_eq!(z.length, 0);
        let bad = RookMatrix::parse("1 1 0; 0 0 0; 0 0 0", 3).unwrap();
        assert_eq!(q_membership(&bad), Err(Error::RowConflict(1)));
        let bad = RookMatrix::parse("1 0 0; 2 0 0; 0 0 0", 3).unwrap();
        assert_eq!(q_membership(&bad), Err(Error::ColumnConflict(1)));
        let s = example_sigma();
        assert_eq!(s.rows, vec![2, 3, 4]);
        assert_eq!(s.cols, vec![1, 3, 5]);
        assert_eq!(s.support.to_text(), "0 0 0 0 0; 0 0 0 0 1; 1 0 0 0 0; 0 0 1 0 0; 0 0 0 0 0");
        assert_eq!(compressed(&s).to_text(), "0 0 2; 5 0 0; 0 3 0");
    }

    #[test]
    fn torus_parts() {
        let s = example_sigma();
        let (ti, sup, tj) = t_decompose(&s);
        assert_eq!(ti.diagonal(), vec![1, 2, 5, 3, 1]);
        assert_eq!(tj.diagonal(), vec![5, 1, 3, 1, 2]);
        assert_eq!(ti.mul(&sup), s.matrix);
        assert_eq!(sup.mul(&tj), s.matrix);
        // hat sends the free rows 1, 5 to the free columns 2, 4 in order
        assert_eq!(s.hat, vec![2, 5, 1, 3, 4]);
    }

    #[test]
    fn worked_length() {
        let s = example_sigma();
        let sets = inversion_sets(&s);
        assert_eq!(sets.inv, vec![(2, 3), (2, 4)]);
        assert_eq!(sets.inv_l, vec![(1, 2), (1, 3), (1, 4)]);
        assert_eq!(sets.inv_r, vec![(1, 2), (1, 4), (3, 4)]);
        assert_eq!((s.m_left(), s.m_right()), (3, 3));
        assert_eq!(s.length, 8);
        assert_eq!(bfs_length(&s), 8);
        assert_eq!(sets.i[0][0], vec![(1, 5)]);
        assert_eq!(sets.j[0][0], vec![(2, 4)]);
        assert_eq!(sets.i[1][0], vec![(2, 5), (3, 5), (4, 5)]);
        assert_eq!(sets.i[1][1], vec![(2, 3), (2, 4), (3, 4)]);
        assert_eq!(sets.j[1][1], vec![(1, 3), (1, 5), (3, 5)]);
        // columns 2, 4 are empty and 3, 5 are not, so (4,5) is here too
        assert_eq!(sets.j[0][1], vec![(2, 3), (2, 5), (4, 5)]);
    }

    #[test]
    fn staircase_word() {
        let s = example_sigma();
        let u = word_matrix(&[Gen::S(2), Gen::S(1), Gen::S(3), Gen::S(2), Gen::S(1)], 5, 7).unwrap();
        let w = word_matrix(&[Gen::S(3), Gen::S(1), Gen::S(2)], 5, 7).unwrap();
        assert_eq!(u.mul(&s.support).mul(&w), v_r(5, 7, 3));
        assert_eq!(v_r(5, 7, 3).to_text(), "0 0 1 0 0; 0 0 0 1 0; 0 0 0 0 1; 0 0 0 0 0; 0 0 0 0 0");
    }

    #[test]
    fn q7_factorization_display() {
        let word = [
            vec![Gen::S(1), Gen::S(2), Gen::S(3), Gen::S(1), Gen::S(2)],
            vec![Gen::A(1); 5],
            vec![Gen::A(2)],
            vec![Gen::A(3); 2],
            vec![Gen::Nu; 2],
            vec![Gen::S(2), Gen::S(1), Gen::S(3)],
        ]
        .concat();
        assert_eq!(word_matrix(&word, 5, 7).unwrap(), example_sigma().matrix);
        let u = word_matrix(&[Gen::S(1), Gen::S(2), Gen::S(3), Gen::S(1), Gen::S(2)], 5, 7).unwrap();
        assert_eq!(u.to_text(), "0 0 0 1 0; 0 0 1 0 0; 1 0 0 0 0; 0 1 0 0 0; 0 0 0 0 1");
        assert_eq!(a_matrix(5, 7, 1, 5).unwrap().diagonal(), vec![5, 1, 1, 1, 1]);
    }

    #[test]
    fn bruhat_round_trip() {
        for s in enumerate_q(3, 3).unwrap() {
            let f = bruhat_factor(&s);
            assert_eq!(f.m.len(), s.rank);
            assert_eq!(word_matrix(&f.to_word(), 3, 3).unwrap(), s.matrix, "{s}");
        }
        let f = bruhat_factor(&example_sigma());
        assert_eq!(word_matrix(&f.to_word(), 5, 7).unwrap(), example_sigma().matrix);
        assert_eq!(f.to_string(), "s_1s_2s_3s_1s_2 · a_1^5a_2a_3^2 · ν^2 · s_2s_1s_3");
    }

    #[test]
    fn framed_correspondence() {
        let s = example_sigma();
        let x = to_framed(&s);
        assert_eq!(x.to_text(), "05130–02530");
        assert_eq!(from_framed(&x), s);
        assert_eq!(to_framed(&canon(&s.matrix.transpose())).to_text(), "30402–50302");
        let all = crate::framed::enumerate(2, 3, None).unwrap();
        for x in &all {
            for y in &all {
                let lhs = from_framed(&x.multiply(y).unwrap()).matrix;
                assert_eq!(lhs, from_framed(x).matrix.mul(&from_framed(y).matrix));
            }
        }
        assert_eq!(generator_matrix(Gen::A(4), 5, 7).unwrap(), RookMatrix::diag(7, &[1, 1, 1, 3, 1]));
    }

    #[test]
    fn special_matrices() {
        let (n, q) = (3, 5);
        let f = PrimeField::new(q).unwrap();
        for r in f.units() {
            let x = x_matrix(n, q, 1, 3, r.residue() as i64).unwrap();
            let y = x_matrix(n, q, 1, 3, -(r.residue() as i64)).unwrap();
            assert_eq!(x.mul(&y), RookMatrix::identity(n, q));
            let s = s_matrix(n, q, 2).unwrap();
            assert_eq!(hs_matrix(n, q, 2, r).unwrap().mul(&s), s.mul(&h_matrix(n, q, 2, r).unwrap()));
        }
        assert_eq!(h_matrix(n, q, 1, f.zero()), Err(Error::ZeroParameter));
        for q in [3, 5] {
            let f = PrimeField::new(q).unwrap();
            for k in 0..(q as i64 - 1) {
                let lhs = h_matrix(3, q, 1, f.gen_pow(k)).unwrap();
                let h = (q as i64 - 1) / 2;
                let rhs = a_matrix(3, q, 1, h).unwrap().mul(&a_matrix(3, q, 1, -k).unwrap()).mul(&a_matrix(3, q, 2, k).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        for r in 0..=4 {
            let v = canon(&v_r(4, 3, r));
            assert_eq!(v.rank, r);
            assert_eq!(v.length, 0);
            assert_eq!(to_framed(&v), evaluate_word(&vec![Gen::Nu; 4 - r], 4, 3).unwrap());
        }
    }

    #[test]
    fn closed_form_matches_bfs() {
        let rs = enumerate_r(3, 3).unwrap();
        assert_eq!(rs.len(), 34);
        for s in rs {
            assert_eq!(s.length, bfs_length(&s), "{s}");
        }
    }

    #[test]
    fn code_round_trip() {
        let s = RookMatrix::parse("0 2 0; 1 0 0; 0 0 2", 3).unwrap();
        assert_eq!(RookMatrix::from_code(3, 3, s.code()), s);
        let t = RookMatrix::parse("1 2 0; 1 1 0; 2 0 2", 3).unwrap();
        assert_eq!(s.product_code(&t), s.mul(&t).code());
    }
}
