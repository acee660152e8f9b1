//! Finite root systems, weights and Weyl groups.
//!
//! Roots are stored in the simple-root basis and weights in the fundamental-weight
//! basis. Simple roots follow the Bourbaki numbering; internally indices are 0-based,
//! so Bourbaki node `i` is index `i - 1`.
//!
//! The invariant form is normalized so that long roots have squared length 2. The
//! matrix returned by [`RootSystem::cartan_matrix`] has entries
//! `a[i][j] = <α_i, α_j^∨> = 2(α_i, α_j) / (α_j, α_j)`, so row `i` is the simple root
//! `α_i` written in the fundamental-weight basis. For `B_2` (α_1 long, α_2 short):
//!
//! ```text
//! [ 2 -2 ]
//! [-1  2 ]
//! ```
//!
//! and for `G_2` (α_1 short):
//!
//! ```text
//! [ 2 -1 ]
//! [-3  2 ]
//! ```
//!
//! Nothing in this module uses floating point.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Default cap on the number of elements any Weyl-group enumeration may visit.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Cartan type such as `C3` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            let reason = match family {
                Family::A => "type A needs rank at least 1",
                Family::B | Family::C => "types B and C need rank at least 2",
                Family::D => "type D needs rank at least 3",
                Family::E => "type E exists only in ranks 6, 7 and 8",
                Family::F => "type F exists only in rank 4",
                Family::G => "type G exists only in rank 2",
            };
            return Err(Error::InvalidType {
                letter: family.letter(),
                rank,
                reason,
            });
        }
        Ok(CartanType { family, rank })
    }

    /// Number of roots (positive and negative).
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Order of the Weyl group, from the closed-form classification.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().unwrap_or(' ');
        let family = Family::from_letter(letter).ok_or(Error::InvalidType {
            letter,
            rank: 0,
            reason: "unknown family letter",
        })?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType {
            letter,
            rank: 0,
            reason: "rank must be a positive integer",
        })?;
        CartanType::new(family, rank)
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

/// A root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for Root {
    fn from(v: Vec<i64>) -> Self {
        Root(v)
    }
}

/// A Weyl-group element given by its lexicographically smallest reduced word.
///
/// The word `[i1, i2, ..., ik]` stands for `s_{i1} s_{i2} ... s_{ik}`, so `s_{ik}`
/// acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    /// Reduces an arbitrary word to the canonical reduced word of the same element.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        for &i in word {
            rs.check_index(i)?;
        }
        let rho = rs.rho();
        let image = apply_word(rs, word, &rho);
        Ok(WeylElement {
            word: canonical_word(rs, image, &rho),
        })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, rs: &RootSystem, weight: &Weight) -> Weight {
        apply_word(rs, &self.word, weight)
    }

    /// The product `self * other` (so `other` acts first).
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement::from_word(rs, &word).expect("indices already validated")
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &word).expect("indices already validated")
    }
}

fn apply_word(rs: &RootSystem, word: &[usize], weight: &Weight) -> Weight {
    let mut w = weight.clone();
    for &i in word.iter().rev() {
        rs.simple_reflect_in_place(i, &mut w);
    }
    w
}

/// Lex-smallest reduced word of the element `w` with `w(base) = image`, where `base` is
/// dominant and `w` is taken minimal in its coset modulo the stabilizer of `base`.
fn canonical_word(rs: &RootSystem, mut image: Weight, base: &Weight) -> Vec<usize> {
    let mut word = Vec::new();
    while &image != base {
        let i = image
            .0
            .iter()
            .position(|&c| c < 0)
            .expect("a non-dominant orbit point has a descent");
        word.push(i);
        rs.simple_reflect_in_place(i, &mut image);
    }
    word
}

/// Cohomology of a line bundle on `G/B` by Borel–Weil–Bott.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BwbResult {
    /// `χ + ρ` is singular: all cohomology vanishes.
    Zero,
    /// Cohomology is concentrated in `degree` and is the irreducible module of
    /// `highest_weight`; `element` is the `w` with `w(χ+ρ)` dominant.
    NonZero {
        degree: usize,
        highest_weight: Weight,
        element: WeylElement,
    },
}

impl BwbResult {
    pub fn degree(&self) -> Option<usize> {
        match self {
            BwbResult::Zero => None,
            BwbResult::NonZero { degree, .. } => Some(*degree),
        }
    }
}

/// A connected component of the Dynkin diagram, with its original node indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramComponent {
    pub cartan_type: CartanType,
    pub nodes: Vec<usize>,
}

/// A fixed point `wW_I` of the torus on `G/P_I`, stored as `w(ω_I)` together with the
/// minimal-length representative `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPoint {
    pub weight: Weight,
    pub element: WeylElement,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: Option<CartanType>,
    components: Vec<DiagramComponent>,
    gram: Vec<Vec<Rational>>,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    positive_index: HashMap<Vec<i64>, usize>,
    coroots: Vec<Vec<i64>>,
    root_weights: Vec<Weight>,
    weight_form: Vec<Vec<Rational>>,
}

impl RootSystem {
    /// Builds the root system of a simple type in Bourbaki numbering.
    pub fn build(t: CartanType) -> Self {
        let mut rs = Self::from_gram(simple_gram(t)).expect("classified types are finite");
        rs.cartan_type = Some(t);
        debug_assert_eq!(rs.root_count(), t.root_count());
        rs
    }

    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let family = Family::from_letter(letter).ok_or(Error::InvalidType {
            letter,
            rank,
            reason: "unknown family letter",
        })?;
        Ok(Self::build(CartanType::new(family, rank)?))
    }

    /// Builds a (possibly reducible) root system from the Gram matrix of its simple roots.
    pub fn from_gram(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            if gram[i].len() != n || gram[i][i] <= Rational::zero() {
                return Err(Error::Inconsistent(
                    "Gram matrix is not a valid base".into(),
                ));
            }
            for j in 0..n {
                let a = Rational::from_integer(2) * gram[i][j] / gram[j][j];
                if !a.is_integer() || gram[i][j] != gram[j][i] {
                    return Err(Error::Inconsistent(
                        "Gram matrix does not give an integral Cartan matrix".into(),
                    ));
                }
                cartan[i][j] = a.to_integer();
            }
        }
        let components = classify_components(&gram, &cartan)?;
        let weight_form = weight_form(&gram, &cartan);

        let mut rs = RootSystem {
            cartan_type: None,
            components,
            gram,
            cartan,
            positive: Vec::new(),
            positive_index: HashMap::new(),
            coroots: Vec::new(),
            root_weights: Vec::new(),
            weight_form,
        };
        rs.generate_roots()?;
        Ok(rs)
    }

    fn generate_roots(&mut self) -> Result<()> {
        let n = self.rank();
        let expected: usize = self
            .components
            .iter()
            .map(|c| c.cartan_type.root_count() / 2)
            .sum();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push(e);
        }
        let mut head = 0;
        while head < queue.len() {
            let root = queue[head].clone();
            head += 1;
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| root[j] * self.cartan[j][i]).sum();
                if pairing >= 0 {
                    continue;
                }
                let mut next = root.clone();
                next[i] -= pairing;
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
            if queue.len() > expected {
                return Err(Error::Inconsistent("root closure is infinite".into()));
            }
        }
        queue.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.positive = queue.into_iter().map(Root).collect();
        self.positive_index = self
            .positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.0.clone(), k))
            .collect();
        self.coroots = self
            .positive
            .iter()
            .map(|r| self.coroot_coeffs(r))
            .collect();
        self.root_weights = self
            .positive
            .iter()
            .map(|r| self.root_to_weight(r))
            .collect();
        Ok(())
    }

    fn coroot_coeffs(&self, root: &Root) -> Vec<i64> {
        let norm = self.root_inner(root, root);
        root.0
            .iter()
            .enumerate()
            .map(|(j, &k)| {
                let c = Rational::from_integer(k) * self.gram[j][j] / norm;
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// The simple type this system was built from, if any.
    pub fn cartan_type(&self) -> Option<CartanType> {
        self.cartan_type
    }

    pub fn components(&self) -> &[DiagramComponent] {
        &self.components
    }

    /// A short label: the simple type, or the component types joined by `x`.
    pub fn label(&self) -> String {
        if let Some(t) = self.cartan_type {
            return t.to_string();
        }
        if self.components.is_empty() {
            return "trivial".to_string();
        }
        self.components
            .iter()
            .map(|c| c.cartan_type.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn weyl_order(&self) -> u128 {
        self.components
            .iter()
            .map(|c| c.cartan_type.weyl_order())
            .product()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// All roots: the positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(|r| -r));
        all
    }

    pub fn root_count(&self) -> usize {
        2 * self.positive.len()
    }

    /// Coroot of the `k`-th positive root, in the simple-coroot basis.
    pub fn positive_coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    /// The `k`-th positive root in the fundamental-weight basis.
    pub fn positive_root_weight(&self, k: usize) -> &Weight {
        &self.root_weights[k]
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Root(v)
    }

    pub fn contains_root(&self, root: &Root) -> bool {
        self.positive_slot(root).is_some()
    }

    /// Index into the positive roots, and whether `root` is the negative of that root.
    fn positive_slot(&self, root: &Root) -> Option<(usize, bool)> {
        if root.0.len() != self.rank() {
            return None;
        }
        if let Some(&k) = self.positive_index.get(&root.0) {
            return Some((k, false));
        }
        let neg: Vec<i64> = root.0.iter().map(|c| -c).collect();
        self.positive_index.get(&neg).map(|&k| (k, true))
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Weight(v)
    }

    /// Half the sum of the positive roots, equal to the sum of the fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn root_to_weight(&self, root: &Root) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|j| (0..n).map(|i| root.0[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// Whether distinct simple roots `i` and `j` are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// The invariant form on roots.
    pub fn root_inner(&self, a: &Root, b: &Root) -> Rational {
        let n = self.rank();
        let mut s = Rational::zero();
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += self.gram[i][j] * Rational::from_integer(a.0[i] * b.0[j]);
            }
        }
        s
    }

    /// The invariant form on weights.
    pub fn weight_inner(&self, a: &Weight, b: &Weight) -> Rational {
        let n = self.rank();
        let mut s = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                s += self.weight_form[i][j] * Rational::from_integer(a.0[i] * b.0[j]);
            }
        }
        s
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    pub(crate) fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                what: "weight",
                expected: self.rank(),
                found: w.rank(),
            })
        }
    }

    /// Validates a set of simple-root indices and returns it as a membership mask.
    pub fn levi_mask(&self, levi: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.rank()];
        for &i in levi {
            self.check_index(i)?;
            mask[i] = true;
        }
        Ok(mask)
    }

    /// The pairing `(χ, β^∨)`; always an integer for integral weights.
    pub fn coroot_pairing(&self, weight: &Weight, root: &Root) -> Result<i64> {
        self.check_weight(weight)?;
        let (k, negated) = self
            .positive_slot(root)
            .ok_or_else(|| Error::NotARoot(root.0.clone()))?;
        let p = self.positive_coroot_pairing(k, weight);
        Ok(if negated { -p } else { p })
    }

    fn positive_coroot_pairing(&self, k: usize, weight: &Weight) -> i64 {
        self.coroots[k]
            .iter()
            .zip(&weight.0)
            .map(|(c, x)| c * x)
            .sum()
    }

    /// `χ - (χ, β^∨) β`.
    pub fn reflect(&self, root: &Root, weight: &Weight) -> Result<Weight> {
        let p = self.coroot_pairing(weight, root)?;
        let beta = self.root_to_weight(root);
        Ok(Weight(
            weight
                .0
                .iter()
                .zip(&beta.0)
                .map(|(x, b)| x - p * b)
                .collect(),
        ))
    }

    /// Reflection of a root in the hyperplane of another root, in root coordinates.
    pub fn reflect_root(&self, mirror: &Root, root: &Root) -> Result<Root> {
        let (k, _) = self
            .positive_slot(mirror)
            .ok_or_else(|| Error::NotARoot(mirror.0.clone()))?;
        if !self.contains_root(root) {
            return Err(Error::NotARoot(root.0.clone()));
        }
        let pairing = self.positive_coroot_pairing(k, &self.root_to_weight(root));
        let m = &self.positive[k];
        Ok(Root(
            root.0
                .iter()
                .zip(&m.0)
                .map(|(x, b)| x - pairing * b)
                .collect(),
        ))
    }

    pub fn simple_reflect(&self, i: usize, weight: &Weight) -> Weight {
        let mut w = weight.clone();
        self.simple_reflect_in_place(i, &mut w);
        w
    }

    pub(crate) fn simple_reflect_in_place(&self, i: usize, weight: &mut Weight) {
        let p = weight.0[i];
        if p != 0 {
            for (x, a) in weight.0.iter_mut().zip(&self.cartan[i]) {
                *x -= p * a;
            }
        }
    }

    /// The dot action `w·χ = w(χ+ρ) - ρ`.
    pub fn dot_action(&self, w: &WeylElement, weight: &Weight) -> Weight {
        let rho = self.rho();
        &w.apply(self, &(weight + &rho)) - &rho
    }

    /// Cohomology of the line bundle of weight `χ` on `G/B` (and on any `G/P` whose
    /// Picard lattice contains `χ`).
    pub fn bwb_cohomology(&self, weight: &Weight) -> Result<BwbResult> {
        self.check_weight(weight)?;
        let rho = self.rho();
        let mut mu = weight + &rho;
        let mut applied = Vec::new();
        while let Some(i) = mu.0.iter().position(|&c| c < 0) {
            self.simple_reflect_in_place(i, &mut mu);
            applied.push(i);
        }
        if mu.0.contains(&0) {
            return Ok(BwbResult::Zero);
        }
        applied.reverse();
        let element = WeylElement::from_word(self, &applied)?;
        debug_assert_eq!(element.length(), applied.len());
        Ok(BwbResult::NonZero {
            degree: applied.len(),
            highest_weight: &mu - &rho,
            element,
        })
    }

    /// Dimension of the irreducible module of dominant highest weight `χ`.
    pub fn weyl_dimension(&self, weight: &Weight) -> Result<u128> {
        self.check_weight(weight)?;
        if !weight.is_dominant() {
            return Err(Error::NotDominant(weight.0.clone()));
        }
        let shifted = weight + &self.rho();
        let rho = self.rho();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for k in 0..self.positive.len() {
            let a = self.positive_coroot_pairing(k, &shifted) as u128;
            let b = self.positive_coroot_pairing(k, &rho) as u128;
            let g1 = a.gcd(&den);
            let g2 = b.gcd(&num);
            num = (num / g2)
                .checked_mul(a / g1)
                .ok_or(Error::Overflow("Weyl dimension"))?;
            den = (den / g1) * (b / g2);
            let g = num.gcd(&den);
            num /= g;
            den /= g;
        }
        if den != 1 {
            return Err(Error::Inconsistent(format!(
                "Weyl dimension {num}/{den} is not an integer"
            )));
        }
        Ok(num)
    }

    /// Fixed points of the torus on `G/P_I`, one per coset in `W/W_I`, ordered by
    /// length and then by reduced word.
    pub fn coset_orbit(&self, levi: &[usize], cap: usize) -> Result<Vec<CosetPoint>> {
        let mask = self.levi_mask(levi)?;
        let start = Weight(mask.iter().map(|&m| if m { 0 } else { 1 }).collect());
        let mut levels: Vec<Vec<Weight>> = vec![vec![start.clone()]];
        let mut seen: HashSet<Weight> = HashSet::new();
        seen.insert(start.clone());
        loop {
            let mut next = Vec::new();
            for mu in levels.last().unwrap() {
                for i in 0..self.rank() {
                    if mu.0[i] > 0 {
                        let nu = self.simple_reflect(i, mu);
                        if seen.insert(nu.clone()) {
                            if seen.len() > cap {
                                return Err(Error::EnumerationCap { cap });
                            }
                            next.push(nu);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        drop(seen);

        let mut words: HashMap<Weight, Vec<usize>> = HashMap::new();
        words.insert(start, Vec::new());
        let mut out = Vec::new();
        for level in levels {
            let mut pts: Vec<CosetPoint> = level
                .into_iter()
                .map(|nu| {
                    let word = match nu.0.iter().position(|&c| c < 0) {
                        None => Vec::new(),
                        Some(i) => {
                            let parent = self.simple_reflect(i, &nu);
                            let mut w = vec![i];
                            w.extend_from_slice(&words[&parent]);
                            w
                        }
                    };
                    CosetPoint {
                        weight: nu,
                        element: WeylElement { word },
                    }
                })
                .collect();
            pts.sort_by(|a, b| a.element.word.cmp(&b.element.word));
            for p in &pts {
                words.insert(p.weight.clone(), p.element.word.clone());
            }
            out.extend(pts);
        }
        Ok(out)
    }

    /// Minimal-length representatives of `W/W_I`.
    pub fn minimal_coset_reps(&self, levi: &[usize], cap: usize) -> Result<Vec<WeylElement>> {
        Ok(self
            .coset_orbit(levi, cap)?
            .into_iter()
            .map(|p| p.element)
            .collect())
    }

    /// The root subsystem spanned by the given simple roots, renumbered `0..nodes.len()`
    /// in increasing order of the original indices.
    pub fn subsystem(&self, nodes: &[usize]) -> Result<RootSystem> {
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        for &i in &set {
            self.check_index(i)?;
        }
        let idx: Vec<usize> = set.into_iter().collect();
        let gram = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.gram[i][j]).collect())
            .collect();
        RootSystem::from_gram(gram)
    }
}

fn simple_gram(t: CartanType) -> Vec<Vec<Rational>> {
    let n = t.rank;
    let r = |a: i64, b: i64| Rational::new(a, b);
    let mut len = vec![r(2, 1); n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let chain = |edges: &mut Vec<(usize, usize)>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            edges.push((i, i + 1));
        }
    };
    match t.family {
        Family::A => chain(&mut edges, n),
        Family::B => {
            chain(&mut edges, n);
            len[n - 1] = r(1, 1);
        }
        Family::C => {
            chain(&mut edges, n);
            for l in len.iter_mut().take(n - 1) {
                *l = r(1, 1);
            }
        }
        Family::D => {
            chain(&mut edges, n - 1);
            edges.push((n - 3, n - 1));
        }
        Family::E => {
            edges.push((0, 2));
            edges.push((1, 3));
            for i in 2..n - 1 {
                edges.push((i, i + 1));
            }
        }
        Family::F => {
            chain(&mut edges, 4);
            len[2] = r(1, 1);
            len[3] = r(1, 1);
        }
        Family::G => {
            edges.push((0, 1));
            len[0] = r(2, 3);
        }
    }
    let mut gram = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        gram[i][i] = len[i];
    }
    for (i, j) in edges {
        let v = -std::cmp::max(len[i], len[j]) / Rational::from_integer(2);
        gram[i][j] = v;
        gram[j][i] = v;
    }
    gram
}

/// `(ω_i, ω_j)`: solves `M C^T = D` with `D = diag((α_j, α_j)/2)`.
fn weight_form(gram: &[Vec<Rational>], cartan: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = gram.len();
    let ct: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(cartan[j][i]))
                .collect()
        })
        .collect();
    let inv = invert(ct);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| gram[i][i] / Rational::from_integer(2) * inv[i][j])
                .collect()
        })
        .collect()
}

fn invert(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Cartan matrices of finite type are invertible");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let a = m[col][j];
                    let b = inv[col][j];
                    m[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    inv
}

fn classify_components(
    gram: &[Vec<Rational>],
    cartan: &[Vec<i64>],
) -> Result<Vec<DiagramComponent>> {
    let n = gram.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut nodes = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < nodes.len() {
            let v = nodes[head];
            head += 1;
            for w in 0..n {
                if w != v && cartan[v][w] != 0 && !seen[w] {
                    seen[w] = true;
                    nodes.push(w);
                }
            }
        }
        nodes.sort_unstable();
        let cartan_type = classify(gram, cartan, &nodes).ok_or_else(|| {
            Error::Inconsistent(format!("diagram on nodes {nodes:?} is not of finite type"))
        })?;
        out.push(DiagramComponent { cartan_type, nodes });
    }
    Ok(out)
}

/// Identifies a connected Dynkin diagram.
fn classify(gram: &[Vec<Rational>], cartan: &[Vec<i64>], nodes: &[usize]) -> Option<CartanType> {
    let n = nodes.len();
    let ty = |f| CartanType::new(f, n).ok();
    if n == 1 {
        return ty(Family::A);
    }
    let mut degree = HashMap::new();
    let mut edges = Vec::new();
    for (a, &i) in nodes.iter().enumerate() {
        for &j in &nodes[a + 1..] {
            if cartan[i][j] != 0 {
                let mult = cartan[i][j] * cartan[j][i];
                edges.push((i, j, mult));
                *degree.entry(i).or_insert(0usize) += 1;
                *degree.entry(j).or_insert(0usize) += 1;
            }
        }
    }
    if edges.len() != n - 1 || edges.iter().any(|e| e.2 > 3) {
        return None;
    }
    let deg = |v: usize| degree.get(&v).copied().unwrap_or(0);
    let multiple: Vec<_> = edges.iter().filter(|e| e.2 > 1).collect();
    match multiple.as_slice() {
        [] => {}
        [&(i, j, 3)] => {
            return if n == 2 && i != j {
                ty(Family::G)
            } else {
                None
            }
        }
        [&(i, j, 2)] => {
            if nodes.iter().any(|&v| deg(v) > 2) {
                return None;
            }
            if n == 2 {
                return if gram[i][i] > gram[j][j] {
                    ty(Family::B)
                } else {
                    ty(Family::C)
                };
            }
            if deg(i) == 2 && deg(j) == 2 {
                return if n == 4 { ty(Family::F) } else { None };
            }
            let (end, other) = if deg(i) == 1 { (i, j) } else { (j, i) };
            return if gram[end][end] < gram[other][other] {
                ty(Family::B)
            } else {
                ty(Family::C)
            };
        }
        _ => return None,
    }
    let branches: Vec<usize> = nodes.iter().copied().filter(|&v| deg(v) >= 3).collect();
    match branches.as_slice() {
        [] => ty(Family::A),
        [b] if deg(*b) == 3 => {
            let mut arms: Vec<usize> = nodes
                .iter()
                .copied()
                .filter(|&v| v != *b && cartan[*b][v] != 0)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    loop {
                        let next = nodes
                            .iter()
                            .copied()
                            .find(|&w| w != prev && w != cur && cartan[cur][w] != 0);
                        match next {
                            Some(w) => {
                                prev = cur;
                                cur = w;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => ty(Family::D),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => ty(Family::E),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    #[test]
    fn invalid_types_are_rejected() {
        for s in ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "H3", "Ax"] {
            assert!(s.parse::<CartanType>().is_err(), "{s}");
        }
        assert!(RootSystem::new('Q', 2).is_err());
    }

    #[test]
    fn small_root_counts() {
        let a1 = rs("A1");
        assert_eq!(a1.root_count(), 2);
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(rs("A3").root_count(), 12);
        assert_eq!(rs("C3").root_count(), 18);
        assert_eq!(rs("C3").positive_roots().len(), 9);
    }

    #[test]
    fn root_counts_match_classification() {
        for s in [
            "A1", "A2", "A5", "B2", "B3", "B6", "C2", "C4", "D3", "D4", "D7", "E6", "E7", "E8",
            "F4", "G2",
        ] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(RootSystem::build(t).root_count(), t.root_count(), "{s}");
        }
    }

    #[test]
    fn bourbaki_cartan_matrices() {
        assert_eq!(rs("B2").cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(rs("C2").cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(rs("G2").cartan_matrix(), &[vec![2, -1], vec![-3, 2]]);
        let f4 = rs("F4");
        assert_eq!(f4.cartan_matrix()[1][2], -2);
        assert_eq!(f4.cartan_matrix()[2][1], -1);
        let e6 = rs("E6");
        assert!(e6.adjacent(1, 3));
        assert!(e6.adjacent(0, 2));
        assert!(!e6.adjacent(0, 1));
    }

    #[test]
    fn long_roots_have_norm_two() {
        for s in ["B3", "C3", "F4", "G2", "E6"] {
            let r = rs(s);
            let max = r
                .positive_roots()
                .iter()
                .map(|a| r.root_inner(a, a))
                .max()
                .unwrap();
            assert_eq!(max, Rational::from_integer(2), "{s}");
        }
    }

    #[test]
    fn kronecker_pairing() {
        let a2 = rs("A2");
        let w1 = a2.fundamental_weight(0);
        assert_eq!(a2.coroot_pairing(&w1, &a2.simple_root(0)).unwrap(), 1);
        assert_eq!(a2.coroot_pairing(&w1, &a2.simple_root(1)).unwrap(), 0);
        for s in ["B3", "G2", "F4"] {
            let r = rs(s);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let p = r
                        .coroot_pairing(&r.fundamental_weight(i), &r.simple_root(j))
                        .unwrap();
                    assert_eq!(p, (i == j) as i64);
                }
                assert_eq!(r.coroot_pairing(&r.rho(), &r.simple_root(i)).unwrap(), 1);
            }
        }
        assert!(matches!(
            a2.coroot_pairing(&w1, &Root(vec![2, 1])),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn reflection_examples() {
        let c3 = rs("C3");
        for i in 0..3 {
            let alpha = c3.simple_root(i);
            let aw = c3.root_to_weight(&alpha);
            assert_eq!(c3.reflect(&alpha, &aw).unwrap(), -&aw);
            let w = c3.fundamental_weight(i);
            assert_eq!(c3.reflect(&alpha, &w).unwrap(), &w - &aw);
        }
    }

    #[test]
    fn dot_action_examples() {
        let a1 = rs("A1");
        let s = WeylElement::from_word(&a1, &[0]).unwrap();
        for k in -5..=5 {
            assert_eq!(a1.dot_action(&s, &Weight(vec![k])), Weight(vec![-k - 2]));
        }
        let b3 = rs("B3");
        let minus_rho = -&b3.rho();
        for i in 0..3 {
            let s = WeylElement::from_word(&b3, &[i]).unwrap();
            assert_eq!(b3.dot_action(&s, &minus_rho), minus_rho);
        }
        let chi = Weight(vec![3, -1, 2]);
        assert_eq!(b3.dot_action(&WeylElement::identity(), &chi), chi);
    }

    #[test]
    fn words_are_reduced() {
        let a2 = rs("A2");
        let w = WeylElement::from_word(&a2, &[0, 0, 1, 0, 1, 0, 1]).unwrap();
        let direct = apply_word(&a2, &[0, 0, 1, 0, 1, 0, 1], &Weight(vec![3, 7]));
        assert_eq!(w.apply(&a2, &Weight(vec![3, 7])), direct);
        assert!(w.length() <= 3);
        assert!(WeylElement::from_word(&a2, &[2]).is_err());
    }

    #[test]
    fn bwb_examples() {
        let a1 = rs("A1");
        assert_eq!(
            a1.bwb_cohomology(&Weight(vec![-2])).unwrap(),
            BwbResult::NonZero {
                degree: 1,
                highest_weight: Weight(vec![0]),
                element: WeylElement::from_word(&a1, &[0]).unwrap(),
            }
        );
        assert_eq!(
            a1.bwb_cohomology(&Weight(vec![-1])).unwrap(),
            BwbResult::Zero
        );
        for s in ["A1", "B3", "E6", "G2"] {
            let r = rs(s);
            let z = Weight::zero(r.rank());
            match r.bwb_cohomology(&z).unwrap() {
                BwbResult::NonZero {
                    degree,
                    highest_weight,
                    ..
                } => {
                    assert_eq!(degree, 0);
                    assert_eq!(highest_weight, z);
                }
                BwbResult::Zero => panic!("trivial bundle has sections"),
            }
        }
        assert!(a1.bwb_cohomology(&Weight(vec![1, 2])).is_err());
    }

    #[test]
    fn weyl_dimension_examples() {
        let a1 = rs("A1");
        for m in 0..20 {
            assert_eq!(a1.weyl_dimension(&Weight(vec![m])).unwrap(), m as u128 + 1);
        }
        assert_eq!(rs("A2").weyl_dimension(&Weight(vec![1, 1])).unwrap(), 8);
        assert_eq!(rs("E8").weyl_dimension(&Weight(vec![0; 8])).unwrap(), 1);
        // adjoint of E8 is the highest root, which is omega_8 in Bourbaki numbering
        let mut w8 = vec![0; 8];
        w8[7] = 1;
        assert_eq!(rs("E8").weyl_dimension(&Weight(w8)).unwrap(), 248);
        assert_eq!(rs("G2").weyl_dimension(&Weight(vec![1, 0])).unwrap(), 7);
        assert!(matches!(
            a1.weyl_dimension(&Weight(vec![-1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn coset_rep_examples() {
        let a1 = rs("A1");
        assert_eq!(
            a1.minimal_coset_reps(&[], DEFAULT_WEYL_CAP).unwrap().len(),
            2
        );
        let a3 = rs("A3");
        assert_eq!(
            a3.minimal_coset_reps(&[0, 2], DEFAULT_WEYL_CAP)
                .unwrap()
                .len(),
            6
        );
        let a2 = rs("A2");
        assert_eq!(
            a2.minimal_coset_reps(&[0], DEFAULT_WEYL_CAP).unwrap().len(),
            3
        );
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let e8 = rs("E8");
        assert_eq!(
            e8.minimal_coset_reps(&[], 1000),
            Err(Error::EnumerationCap { cap: 1000 })
        );
        assert!(matches!(
            rs("A2").minimal_coset_reps(&[5], 10),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn coset_reps_are_minimal_in_their_cosets() {
        // w is minimal in wW_I iff w(α) > 0 for every α in I; check via the action
        // on the simple roots of I.
        let b3 = rs("B3");
        let levi = [0, 2];
        for w in b3.minimal_coset_reps(&levi, DEFAULT_WEYL_CAP).unwrap() {
            for &i in &levi {
                let img = w.apply(&b3, &b3.root_to_weight(&b3.simple_root(i)));
                let pos = b3
                    .positive_roots()
                    .iter()
                    .any(|r| b3.root_to_weight(r) == img);
                assert!(pos, "{:?} sends α_{} negative", w.word(), i + 1);
            }
        }
    }

    #[test]
    fn subsystem_labels() {
        let e8 = rs("E8");
        assert_eq!(e8.subsystem(&[0, 1, 2, 3, 4, 5, 6]).unwrap().label(), "E7");
        assert_eq!(e8.subsystem(&[1, 2, 3, 4, 5]).unwrap().label(), "D5");
        assert_eq!(rs("F4").subsystem(&[1, 2, 3]).unwrap().label(), "C3");
        assert_eq!(rs("F4").subsystem(&[0, 1, 2]).unwrap().label(), "B3");
        assert_eq!(rs("B4").subsystem(&[0, 2, 3]).unwrap().label(), "A1xB2");
        let empty = rs("A1").subsystem(&[]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.weyl_order(), 1);
        assert_eq!(empty.minimal_coset_reps(&[], 10).unwrap().len(), 1);
    }

    #[test]
    fn invariant_form_is_weyl_invariant_on_roots() {
        let f4 = rs("F4");
        let roots = f4.roots();
        for a in roots.iter().step_by(5) {
            for b in roots.iter().step_by(3) {
                let ra = f4.reflect_root(&f4.simple_root(2), a).unwrap();
                let rb = f4.reflect_root(&f4.simple_root(2), b).unwrap();
                assert_eq!(f4.root_inner(&ra, &rb), f4.root_inner(a, b));
            }
        }
    }
}
