//! The framed symmetric inverse monoid F_q(I_n): partial permutations of [n]
//! whose lines carry labels in F_q^x. Maps act on the right, so `xy` means
//! "first x, then y".

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{guard, Error, Result};
use crate::partitions::{diagram_from_word, ColoredPartition};
use crate::perm;
use crate::report::{Check, Report};
use crate::ring::{FpScalar, PrimeField};

/// Largest enumeration or closure we are willing to materialize.
pub const ENUMERATION_LIMIT: u128 = 2_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FramedPartial {
    q: u32,
    /// `image[i-1]` is i sigma, 0 when i is outside the domain.
    image: Vec<u8>,
    /// Label residue of the line starting at i, 0 off the domain.
    labels: Vec<u8>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    S(usize),
    R(usize),
    A(usize),
    Nu,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::S(i) => write!(f, "s_{i}"),
            Gen::R(i) => write!(f, "r_{i}"),
            Gen::A(i) => write!(f, "a_{i}"),
            Gen::Nu => write!(f, "ν"),
        }
    }
}

pub fn word_string(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// Total count (q-1)^r C(n,r)^2 r! of rank-r elements.
pub fn count_rank(n: usize, q: u32, r: usize) -> u128 {
    let (n, r) = (n as u128, r as u128);
    (q as u128 - 1).pow(r as u32) * perm::binomial(n, r).pow(2) * perm::factorial(r)
}

pub fn count(n: usize, q: u32) -> u128 {
    (0..=n).map(|r| count_rank(n, q, r)).sum()
}

impl FramedPartial {
    /// Build from an image word and label residues (labels off the domain are ignored).
    pub fn new(q: u32, image: &[usize], labels: &[u32]) -> Result<Self> {
        let n = image.len();
        if labels.len() != n {
            return Err(Error::SizeMismatch(n, labels.len()));
        }
        let field = PrimeField::new(q)?;
        let mut seen = vec![false; n + 1];
        let mut img = Vec::with_capacity(n);
        let mut lab = Vec::with_capacity(n);
        for (i, (&j, &l)) in image.iter().zip(labels).enumerate() {
            if j > n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            if j == 0 {
                img.push(0);
                lab.push(0);
                continue;
            }
            if seen[j] {
                return Err(Error::Parse(format!("value {j} repeated in image word")));
            }
            seen[j] = true;
            let l = field.elem(l as i64);
            if l.is_zero() {
                return Err(Error::Parse(format!("zero label on strand {}", i + 1)));
            }
            img.push(j as u8);
            lab.push(l.residue() as u8);
        }
        Ok(FramedPartial { q, image: img, labels: lab })
    }

    /// A partial permutation with every label 1.
    pub fn unframed(q: u32, image: &[usize]) -> Result<Self> {
        Self::new(q, image, &vec![1; image.len()])
    }

    pub fn identity(n: usize, q: u32) -> Self {
        FramedPartial { q, image: (1..=n as u8).collect(), labels: vec![1; n] }
    }

    pub fn zero(n: usize, q: u32) -> Self {
        FramedPartial { q, image: vec![0; n], labels: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// i sigma, or None off the domain (1-based).
    pub fn apply(&self, i: usize) -> Option<usize> {
        match self.image[i - 1] {
            0 => None,
            j => Some(j as usize),
        }
    }

    pub fn label(&self, i: usize) -> Option<FpScalar> {
        self.apply(i).map(|_| FpScalar::new(self.labels[i - 1] as i64, self.q))
    }

    pub fn image_word(&self) -> Vec<usize> {
        self.image.iter().map(|&j| j as usize).collect()
    }

    pub fn label_word(&self) -> Vec<u32> {
        self.labels.iter().map(|&l| l as u32).collect()
    }

    pub fn rank(&self) -> usize {
        self.image.iter().filter(|&&j| j != 0).count()
    }

    pub fn domain(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.image[i - 1] != 0).collect()
    }

    pub fn codomain(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.image.iter().filter(|&&j| j != 0).map(|&j| j as usize).collect();
        c.sort_unstable();
        c
    }

    pub fn is_unframed(&self) -> bool {
        self.labels.iter().all(|&l| l <= 1)
    }

    /// Forget the labels.
    pub fn underlying(&self) -> Self {
        FramedPartial {
            q: self.q,
            image: self.image.clone(),
            labels: self.image.iter().map(|&j| (j != 0) as u8).collect(),
        }
    }

    /// First self, then other; labels multiply along composed lines.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let q = self.q;
        let mut image = vec![0u8; self.n()];
        let mut labels = vec![0u8; self.n()];
        for i in 0..self.n() {
            let j = self.image[i];
            if j == 0 {
                continue;
            }
            let k = other.image[j as usize - 1];
            if k == 0 {
                continue;
            }
            image[i] = k;
            labels[i] = ((self.labels[i] as u32 * other.labels[j as usize - 1] as u32) % q) as u8;
        }
        FramedPartial { q: self.q, image, labels }
    }

    /// Reverse every line, keeping its label.
    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut image = vec![0u8; n];
        let mut labels = vec![0u8; n];
        for i in 0..n {
            let j = self.image[i];
            if j != 0 {
                image[j as usize - 1] = (i + 1) as u8;
                labels[j as usize - 1] = self.labels[i];
            }
        }
        FramedPartial { q: self.q, image, labels }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.n(), self.q), |acc, _| acc.mul_unchecked(self))
    }

    /// The coloured set partition of [2n] with lines {i, n + i sigma}.
    pub fn to_colored(&self) -> Result<ColoredPartition> {
        let n = self.n();
        let part = diagram_from_word(&self.image_word())?;
        let colors: BTreeMap<(usize, usize), FpScalar> = self
            .domain()
            .into_iter()
            .map(|i| ((i, n + self.image[i - 1] as usize), self.label(i).unwrap()))
            .collect();
        ColoredPartition::new(part, self.q, colors)
    }

    /// Inverse of `to_colored` on partial-Brauer diagrams whose arcs all cross.
    pub fn from_colored(c: &ColoredPartition, q: u32) -> Result<Self> {
        let n = c.partition().size() / 2;
        let mut image = vec![0usize; n];
        let mut labels = vec![1u32; n];
        for ((a, b), g) in c.colors() {
            if !(*a <= n && *b > n) {
                return Err(Error::Parse(format!("arc ({a},{b}) does not cross")));
            }
            image[a - 1] = b - n;
            labels[a - 1] = g.residue();
        }
        Self::new(q, &image, &labels)
    }

    /// "image–labels", e.g. "05130–02530".
    pub fn to_text(&self) -> String {
        format!("{}–{}", word_text(&self.image), word_text(&self.labels))
    }

    /// Parse "image-labels" (hyphen or en dash).
    pub fn parse(s: &str, q: u32) -> Result<Self> {
        let s = s.trim();
        let (a, b) = s
            .split_once('–')
            .or_else(|| s.split_once('-'))
            .ok_or_else(|| Error::Parse(format!("expected image-labels, got {s:?}")))?;
        let image = parse_word(a)?;
        let labels: Vec<u32> = parse_word(b)?.into_iter().map(|v| v as u32).collect();
        Self::new(q, &image, &labels)
    }
}

impl fmt::Display for FramedPartial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn word_text(w: &[u8]) -> String {
    if w.iter().any(|&v| v > 9) {
        w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    } else {
        w.iter().map(|v| char::from(b'0' + v)).collect()
    }
}

fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad word {s:?}"));
    if s.contains(',') {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

/// The named generator of F_q(I_n).
pub fn generator(g: Gen, n: usize, q: u32) -> Result<FramedPartial> {
    let field = PrimeField::new(q)?;
    let mut x = FramedPartial::identity(n, q);
    let check = |i: usize, hi: usize| {
        if i == 0 || i > hi {
            Err(Error::IndexOutOfRange { index: i, n })
        } else {
            Ok(())
        }
    };
    match g {
        Gen::S(i) => {
            check(i, n.saturating_sub(1))?;
            x.image.swap(i - 1, i);
        }
        Gen::R(i) => {
            check(i, n)?;
            x.image[i - 1] = 0;
            x.labels[i - 1] = 0;
        }
        Gen::A(i) => {
            check(i, n)?;
            x.labels[i - 1] = field.generator().residue() as u8;
        }
        Gen::Nu => {
            for i in 0..n {
                x.image[i] = if i + 1 < n { (i + 2) as u8 } else { 0 };
            }
            if n > 0 {
                x.labels[n - 1] = 0;
            }
        }
    }
    Ok(x)
}

/// Left-to-right product of the letters.
pub fn evaluate_word(word: &[Gen], n: usize, q: u32) -> Result<FramedPartial> {
    let mut acc = FramedPartial::identity(n, q);
    for &g in word {
        acc = acc.mul_unchecked(&generator(g, n, q)?);
    }
    Ok(acc)
}

/// s_{k,j}: s_{k-1} s_{k-2} ... s_j for k >= j, sending k to j;
/// s_j s_{j+1} ... s_{k-1} for k < j, sending k to j.
pub fn s_kj(k: usize, j: usize) -> Vec<Gen> {
    if k >= j {
        (j..k).rev().map(Gen::S).collect()
    } else {
        (k..j).map(Gen::S).collect()
    }
}

/// omega_A = s_{a_1,1} ... s_{a_r,r}.
pub fn omega(a: &[usize]) -> Vec<Gen> {
    a.iter().enumerate().flat_map(|(j, &k)| s_kj(k, j + 1)).collect()
}

/// omega-bar_B = s_{n-r+1,b_1} ... s_{n,b_r}.
pub fn omega_bar(n: usize, b: &[usize]) -> Vec<Gen> {
    let r = b.len();
    b.iter().enumerate().flat_map(|(j, &bj)| s_kj(n - r + j + 1, bj)).collect()
}

/// sigma = omega_A f_m sigma* nu^{n-r} omega-bar_B.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub n: usize,
    pub a: Vec<usize>,
    /// Discrete logs of the labels of the lines starting at a_1 < ... < a_r.
    pub m: Vec<u32>,
    /// Image word of the flattened permutation of [r].
    pub star: Vec<usize>,
    pub b: Vec<usize>,
}

impl NormalForm {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn to_word(&self) -> Vec<Gen> {
        let r = self.rank();
        let mut w = omega(&self.a);
        for (j, &mj) in self.m.iter().enumerate() {
            w.extend(std::iter::repeat(Gen::A(j + 1)).take(mj as usize));
        }
        w.extend(perm::reduced_word(&self.star).into_iter().map(Gen::S));
        w.extend(std::iter::repeat(Gen::Nu).take(self.n - r));
        w.extend(omega_bar(self.n, &self.b));
        w
    }
}

fn join_set(v: &[impl ToString]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star: String = {
            let w = perm::reduced_word(&self.star);
            if w.is_empty() {
                "1".into()
            } else {
                w.iter().map(|k| format!("s_{k}")).collect()
            }
        };
        write!(
            f,
            "ω_{{{}}} f_({}) ({}) ν^{} ω̄_{{{}}}",
            join_set(&self.a),
            join_set(&self.m),
            star,
            self.n - self.rank(),
            join_set(&self.b)
        )
    }
}

pub fn normal_form(x: &FramedPartial) -> NormalForm {
    let a = x.domain();
    let b = x.codomain();
    let m = a.iter().map(|&i| x.label(i).unwrap().log().expect("labels are units")).collect();
    let star = a.iter().map(|&i| 1 + b.iter().position(|&j| j == x.apply(i).unwrap()).unwrap()).collect();
    NormalForm { n: x.n(), a, m, star, b }
}

/// All elements of F_q(I_n) (of rank r if given), sorted by image word then labels.
pub fn enumerate(n: usize, q: u32, r: Option<usize>) -> Result<Vec<FramedPartial>> {
    let field = PrimeField::new(q)?;
    let total = match r {
        Some(r) => count_rank(n, q, r),
        None => count(n, q),
    };
    guard("framed enumeration", total, ENUMERATION_LIMIT)?;
    let units: Vec<u32> = field.units().map(|u| u.residue()).collect();
    let mut out = Vec::with_capacity(total as usize);
    let ranks: Vec<usize> = match r {
        Some(r) if r > n => vec![],
        Some(r) => vec![r],
        None => (0..=n).collect(),
    };
    for r in ranks {
        for dom in perm::subsets(n, r) {
            for cod in perm::subsets(n, r) {
                for p in perm::all(r) {
                    let mut image = vec![0usize; n];
                    for (k, &i) in dom.iter().enumerate() {
                        image[i - 1] = cod[p[k] - 1];
                    }
                    for code in 0..units.len().pow(r as u32) {
                        let mut labels = vec![0u32; n];
                        let mut c = code;
                        for &i in &dom {
                            labels[i - 1] = units[c % units.len()];
                            c /= units.len();
                        }
                        out.push(FramedPartial::new(q, &image, &labels)?);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every product of the given elements, including the identity.
pub fn closure(gens: &[FramedPartial], n: usize, q: u32) -> Result<HashSet<FramedPartial>> {
    guard("framed closure", count(n, q), ENUMERATION_LIMIT)?;
    let id = FramedPartial::identity(n, q);
    let mut seen: HashSet<FramedPartial> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul_unchecked(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

pub fn all_generators(n: usize, q: u32, with_nu: bool) -> Result<Vec<FramedPartial>> {
    let mut gens = Vec::new();
    for i in 1..n {
        gens.push(generator(Gen::S(i), n, q)?);
    }
    for i in 1..=n {
        gens.push(generator(Gen::A(i), n, q)?);
    }
    if with_nu {
        if n > 0 {
            gens.push(generator(Gen::Nu, n, q)?);
        }
    } else {
        for i in 1..=n {
            gens.push(generator(Gen::R(i), n, q)?);
        }
    }
    Ok(gens)
}

type Instance = (Vec<Gen>, Vec<Gen>);

fn relation_check(name: &str, anchor: &str, n: usize, q: u32, instances: Vec<Instance>) -> Result<Check> {
    let total = instances.len();
    let mut failures = Vec::new();
    for (l, r) in instances {
        let (x, y) = (evaluate_word(&l, n, q)?, evaluate_word(&r, n, q)?);
        if x != y {
            failures.push(format!("{} = {x} but {} = {y}", word_string(&l), word_string(&r)));
        }
    }
    Ok(Check::from_failures(name, anchor, total, failures))
}

fn rep(g: Gen, k: usize) -> Vec<Gen> {
    vec![g; k]
}

fn cat(parts: &[&[Gen]]) -> Vec<Gen> {
    parts.concat()
}

/// Every relation of the presentation checked in F_q(I_n), plus closure counts.
pub fn verify_presentation_relations(n: usize, q: u32) -> Result<Report> {
    guard("presentation n", n as u128, 4)?;
    PrimeField::new(q)?;
    let mut rep_ = Report::new("framed", &[("n", n.to_string()), ("q", q.to_string())]);
    let (s, r, a) = (Gen::S, Gen::R, Gen::A);
    let nu = Gen::Nu;
    let pairs = |lo: usize, hi: usize| -> Vec<(usize, usize)> {
        (lo..=hi).flat_map(|i| (lo..=hi).map(move |j| (i, j))).collect()
    };
    let sidx = 1..n;
    let fam: Vec<(&str, &str, Vec<Instance>)> = vec![
        ("s_i^2 = 1", "s_i^2 = 1", sidx.clone().map(|i| (vec![s(i), s(i)], vec![])).collect()),
        (
            "braid",
            "s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}",
            (1..n.saturating_sub(1)).map(|i| (vec![s(i), s(i + 1), s(i)], vec![s(i + 1), s(i), s(i + 1)])).collect(),
        ),
        (
            "far commutation of s",
            "s_i s_j = s_j s_i, |i-j| > 1",
            pairs(1, n.saturating_sub(1))
                .into_iter()
                .filter(|(i, j)| i.abs_diff(*j) > 1)
                .map(|(i, j)| (vec![s(i), s(j)], vec![s(j), s(i)]))
                .collect(),
        ),
        ("r_i idempotent", "r_i^2 = r_i", (1..=n).map(|i| (vec![r(i), r(i)], vec![r(i)])).collect()),
        (
            "r commute",
            "r_i r_j = r_j r_i",
            pairs(1, n).into_iter().map(|(i, j)| (vec![r(i), r(j)], vec![r(j), r(i)])).collect(),
        ),
        (
            "s_i r_i = r_{i+1} s_i",
            "s_i r_i = r_{i+1} s_i",
            sidx.clone().map(|i| (vec![s(i), r(i)], vec![r(i + 1), s(i)])).collect(),
        ),
        (
            "r_i s_i r_i = r_i r_{i+1}",
            "r_i s_i r_i = r_i r_{i+1}",
            sidx.clone().map(|i| (vec![r(i), s(i), r(i)], vec![r(i), r(i + 1)])).collect(),
        ),
        (
            "s_i r_j = r_j s_i",
            "s_i r_j = r_j s_i, j not in {i, i+1}",
            sidx.clone()
                .flat_map(|i| (1..=n).filter(move |&j| j != i && j != i + 1).map(move |j| (vec![s(i), r(j)], vec![r(j), s(i)])))
                .collect(),
        ),
        (
            "a_i has order q-1",
            "a_i^(q-1) = 1",
            (1..=n).map(|i| (rep(a(i), q as usize - 1), vec![])).collect(),
        ),
        (
            "a commute",
            "a_i a_j = a_j a_i",
            pairs(1, n).into_iter().map(|(i, j)| (vec![a(i), a(j)], vec![a(j), a(i)])).collect(),
        ),
        (
            "s_i a_i = a_{i+1} s_i",
            "s_i a_i = a_{i+1} s_i",
            sidx.clone().map(|i| (vec![s(i), a(i)], vec![a(i + 1), s(i)])).collect(),
        ),
        (
            "s_i a_j = a_j s_i",
            "s_i a_j = a_j s_i, j not in {i, i+1}",
            sidx.clone()
                .flat_map(|i| (1..=n).filter(move |&j| j != i && j != i + 1).map(move |j| (vec![s(i), a(j)], vec![a(j), s(i)])))
                .collect(),
        ),
        (
            "r_i a_j = a_j r_i",
            "r_i a_j = a_j r_i",
            pairs(1, n).into_iter().filter(|(i, j)| i != j).map(|(i, j)| (vec![r(i), a(j)], vec![a(j), r(i)])).collect(),
        ),
        ("r_i a_i = r_i", "r_i a_i = r_i", (1..=n).map(|i| (vec![r(i), a(i)], vec![r(i)])).collect()),
        (
            "nu^{i+1} absorbs s",
            "nu^(i+1) s_i = nu^(i+1) = s_(n-i) nu^(i+1)",
            sidx.clone()
                .flat_map(|i| {
                    let p = rep(nu, i + 1);
                    [(cat(&[&p, &[s(i)]]), p.clone()), (cat(&[&[s(n - i)], &p]), p.clone())]
                })
                .collect(),
        ),
        (
            "s_i nu = nu s_{i+1}",
            "s_i nu = nu s_(i+1)",
            (1..n.saturating_sub(1)).map(|i| (vec![s(i), nu], vec![nu, s(i + 1)])).collect(),
        ),
        ("nu s_1...s_{n-1} nu = nu", "nu s_1 ... s_(n-1) nu = nu", {
            let mid: Vec<Gen> = (1..n).map(s).collect();
            vec![(cat(&[&[nu], &mid, &[nu]]), vec![nu])]
        }),
        ("s_1...s_{n-1} nu = r_1", "r_1 = s_1 ... s_(n-1) nu", {
            let mid: Vec<Gen> = (1..n).map(s).collect();
            vec![(cat(&[&mid, &[nu]]), vec![r(1)])]
        }),
        (
            "a_i nu = nu a_{i+1}",
            "a_i nu = nu a_(i+1)",
            (1..n).map(|i| (vec![a(i), nu], vec![nu, a(i + 1)])).collect(),
        ),
        ("nu a_1 = a_n nu = nu", "nu a_1 = a_n nu = nu", vec![(vec![nu, a(1)], vec![nu]), (vec![a(n), nu], vec![nu])]),
        (
            "r_1 s_1 r_1 s_1 = s_1 r_1 s_1 r_1",
            "r_1 s_1 r_1 s_1 = s_1 r_1 s_1 r_1",
            if n >= 2 { vec![(vec![r(1), s(1), r(1), s(1)], vec![s(1), r(1), s(1), r(1)])] } else { vec![] },
        ),
        (
            "r_{i+1} r_i s_i = s_i r_{i+1} r_i",
            "r_(i+1) r_i s_i = s_i r_(i+1) r_i",
            sidx.clone().map(|i| (vec![r(i + 1), r(i), s(i)], vec![s(i), r(i + 1), r(i)])).collect(),
        ),
        (
            "nu^j kills framing",
            "a_(n-i+1) nu^j = nu^j a_i = nu^j, i <= j",
            (1..=n)
                .flat_map(|j| {
                    (1..=j).flat_map(move |i| {
                        let p = rep(nu, j);
                        [(cat(&[&[a(n - i + 1)], &p]), p.clone()), (cat(&[&p, &[a(i)]]), p.clone())]
                    })
                })
                .collect(),
        ),
    ];
    for (name, anchor, inst) in fam {
        rep_.push(relation_check(name, anchor, n, q, inst)?);
    }

    // nu^{n-r}: domain [r], codomain [n-r+1, n], order preserving
    let mut bad = Vec::new();
    for r in 0..=n {
        let p = evaluate_word(&rep(nu, n - r), n, q)?;
        let ok = p.domain() == (1..=r).collect::<Vec<_>>()
            && p.codomain() == (n - r + 1..=n).collect::<Vec<_>>()
            && (1..=r).all(|i| p.apply(i) == Some(n - r + i));
        if !ok {
            bad.push(format!("nu^{} = {p}", n - r));
        }
    }
    rep_.push(Check::from_failures("nu^{n-r} shape", "dom(nu^(n-r)) = [r], 1 nu < ... < r nu", n + 1, bad));

    let expected = count(n, q);
    for (label, with_nu) in [("s, r, a", false), ("s, nu, a", true)] {
        let c = closure(&all_generators(n, q, with_nu)?, n, q)?.len() as u128;
        rep_.push(Check::new(
            format!("closure of {label}"),
            "|F_q(I_n)| = sum_r (q-1)^r C(n,r)^2 r!",
            c == expected,
            format!("closure {c}, formula {expected}"),
        ));
    }

    let torus: Vec<FramedPartial> = (1..=n).map(|i| generator(Gen::A(i), n, q)).collect::<Result<_>>()?;
    let t = closure(&torus, n, q)?;
    let abelian = t.iter().all(|x| t.iter().all(|y| x.mul_unchecked(y) == y.mul_unchecked(x)));
    let exponent = t.iter().all(|x| x.pow(q as usize - 1) == FramedPartial::identity(n, q));
    let tsize = (q as u128 - 1).pow(n as u32);
    rep_.push(Check::new(
        "framings of the identity",
        "F_q({1}) = (F_q^x)^n",
        t.len() as u128 == tsize && abelian && exponent,
        format!("size {} (expected {tsize}), abelian {abelian}, exponent q-1 {exponent}", t.len()),
    ));

    let mut nf_bad = Vec::new();
    let all = enumerate(n, q, None)?;
    for x in &all {
        let w = normal_form(x).to_word();
        if evaluate_word(&w, n, q)? != *x {
            nf_bad.push(x.to_string());
        }
    }
    rep_.push(Check::from_failures(
        "normal form round trip",
        "sigma = omega_A f_m sigma* nu^(n-r) omega-bar_B",
        all.len(),
        nf_bad,
    ));
    Ok(rep_)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::concatenate_colored;

    fn fp(s: &str, q: u32) -> FramedPartial {
        FramedPartial::parse(s, q).unwrap()
    }

    #[test]
    fn generator_words() {
        assert_eq!(generator(Gen::Nu, 3, 3).unwrap().image_word(), vec![2, 3, 0]);
        let r2 = generator(Gen::R(2), 3, 3).unwrap();
        assert_eq!(r2.to_text(), "103–101");
        assert!(generator(Gen::S(3), 3, 3).is_err());
        assert!(generator(Gen::A(0), 3, 3).is_err());
        let a1 = generator(Gen::A(1), 2, 5).unwrap();
        assert_eq!(a1.pow(4), FramedPartial::identity(2, 5));
        assert_ne!(a1.pow(2), FramedPartial::identity(2, 5));
    }

    #[test]
    fn products() {
        let (n, q) = (3, 5);
        let r1 = generator(Gen::R(1), n, q).unwrap();
        let a1 = generator(Gen::A(1), n, q).unwrap();
        assert_eq!(r1.multiply(&a1).unwrap(), r1);
        assert_eq!(evaluate_word(&[], n, q).unwrap(), FramedPartial::identity(n, q));
        assert_eq!(evaluate_word(&[Gen::S(1), Gen::S(1)], n, q).unwrap(), FramedPartial::identity(n, q));
        // the element of the correspondence figure and its transpose
        let x = fp("05130–02530", 7);
        assert_eq!(x.transpose().to_text(), "30402–50302");
        let xx = x.multiply(&x.transpose()).unwrap();
        // lines 2->5->2 (2*2), 3->1->3 (5*5), 4->3->4 (3*3)
        assert_eq!(xx.to_text(), "02340–04420");
    }

    #[test]
    fn text_round_trip() {
        let x = fp("05130-02530", 7);
        assert_eq!(x.to_text(), "05130–02530");
        assert_eq!(fp(&x.to_text(), 7), x);
        let y = FramedPartial::new(11, &[2, 1], &[10, 3]).unwrap();
        assert_eq!(y.to_text(), "21–10,3");
        assert_eq!(fp("21–10,3", 11), y);
        assert!(FramedPartial::parse("1123-1111", 3).is_err());
        assert!(FramedPartial::parse("12-10", 3).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let x = FramedPartial::unframed(3, &[0, 5, 2, 0, 3]).unwrap();
        assert_eq!(normal_form(&x).star, vec![3, 1, 2]);
        let id = normal_form(&FramedPartial::identity(4, 3));
        assert_eq!(id.a, vec![1, 2, 3, 4]);
        assert_eq!(id.m, vec![0; 4]);
        assert_eq!(id.star, vec![1, 2, 3, 4]);
        assert_eq!(id.b, id.a);
    }

    #[test]
    fn figure_normal_form() {
        let nf = NormalForm { n: 6, a: vec![2, 4, 5], m: vec![3, 5, 2], star: vec![3, 2, 1], b: vec![1, 4, 6] };
        let x = evaluate_word(&nf.to_word(), 6, 7).unwrap();
        assert_eq!(x.to_text(), "060410–060520");
        assert_eq!(normal_form(&x), nf);
        assert_eq!(nf.to_string(), "ω_{2,4,5} f_(3,5,2) (s_1s_2s_1) ν^3 ω̄_{1,4,6}");
    }

    #[test]
    fn omega_sends_a_j_to_j() {
        for n in 1..=5 {
            for r in 0..=n {
                for a in perm::subsets(n, r) {
                    let w = evaluate_word(&omega(&a), n, 3).unwrap();
                    for (j, &aj) in a.iter().enumerate() {
                        assert_eq!(w.apply(aj), Some(j + 1));
                    }
                    let wb = evaluate_word(&omega_bar(n, &a), n, 3).unwrap();
                    for (j, &bj) in a.iter().enumerate() {
                        assert_eq!(wb.apply(n - r + j + 1), Some(bj));
                    }
                }
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate(2, 3, None).unwrap().len(), 17);
        assert_eq!(enumerate(3, 3, None).unwrap().len(), 139);
        assert_eq!(enumerate(3, 2, None).unwrap().len(), 34);
        assert_eq!(enumerate(1, 3, None).unwrap().len(), 3);
        assert_eq!(enumerate(3, 3, Some(2)).unwrap().len(), 72);
        assert!(matches!(enumerate(7, 7, None), Err(Error::ScaleGuard { .. })));
        let e = enumerate(2, 5, None).unwrap();
        assert!(e.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn normal_form_round_trip_all_of_f3_i3() {
        for x in enumerate(3, 3, None).unwrap() {
            assert_eq!(evaluate_word(&normal_form(&x).to_word(), 3, 3).unwrap(), x);
        }
    }

    #[test]
    fn transpose_is_anti_automorphism() {
        let all = enumerate(2, 3, None).unwrap();
        for x in &all {
            for y in &all {
                let xy = x.multiply(y).unwrap();
                assert_eq!(xy.transpose(), y.transpose().multiply(&x.transpose()).unwrap());
            }
        }
    }

    #[test]
    fn agrees_with_coloured_diagram_product() {
        let all = enumerate(2, 3, None).unwrap();
        for x in &all {
            for y in &all {
                let direct = x.multiply(y).unwrap().to_colored().unwrap();
                let diag = concatenate_colored(&x.to_colored().unwrap(), &y.to_colored().unwrap()).unwrap();
                assert_eq!(direct, diag, "{x} * {y}");
            }
        }
    }

    #[test]
    fn presentation_holds() {
        for (n, q) in [(2, 3), (3, 3), (2, 5), (4, 3)] {
            let r = verify_presentation_relations(n, q).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
