//! Non-associative graded algebras, the symmetrized product, and free Jacobi
//! algebras through homological level 2.
//!
//! Monomials are binary product trees over generators and λ-nodes. A raw
//! element uses the plain product `x·y`. The graded-commutative algebra in
//! which the Jacobi calculus happens is represented by *canonical* trees:
//! each product node is oriented by the monomial order, picking up the sign
//! `(-1)^{|x||y|+1}`, and the arguments of each λ-node are sorted with the
//! Koszul sign. In a canonical tree a product node stands for the symmetrized
//! bracket `[x,y] = ½(x·y + (-1)^{|x||y|+1} y·x)`.
//!
//! All signs use the total degree, homological level plus internal degree.
//! A λ₃-node has level 1 and a λ₄-node level 2. The λ₄ boundary is usually
//! written with the bigraded sign rule `(-1)^{ii'+pp'}`; transported to the
//! total-degree rule by the twist `x∗y = (-1)^{p_x i_y} x·y`, the only term
//! that changes is `[x, λ₃(y,z,w)]`, which picks up `(-1)^{|x|}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::dgl::{Dgl, DglError};
use crate::lie::{Gen, LieElement};
use crate::linalg::{homology_at, rank, ChainComplex, HomologyAt, LinalgError, SparseMatrix, SparseVec};
use crate::scalar::{q, qr, Q};

fn odd(e: u32) -> bool {
    e % 2 == 1
}

fn sign(e: u32) -> Q {
    if odd(e) {
        q(-1)
    } else {
        q(1)
    }
}

/// A product tree over generators and λ-nodes.
///
/// The derived order (degree, then level, then shape) is the monomial order
/// used for canonicalization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NAMonomial {
    degree: u32,
    level: u32,
    node: Node,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Node {
    Gen(Gen),
    Product(Arc<NAMonomial>, Arc<NAMonomial>),
    Lambda(Vec<NAMonomial>),
}

impl NAMonomial {
    pub fn generator(g: Gen) -> Self {
        NAMonomial { degree: g.degree, level: 0, node: Node::Gen(g) }
    }

    /// The raw product `a·b`.
    pub fn product(a: NAMonomial, b: NAMonomial) -> Self {
        NAMonomial { degree: a.degree + b.degree, level: a.level + b.level, node: Node::Product(Arc::new(a), Arc::new(b)) }
    }

    /// A λ-node with its arguments in the given order. Arity 3 or 4.
    pub fn lambda(args: Vec<NAMonomial>) -> Self {
        assert!(matches!(args.len(), 3 | 4), "λ-nodes have arity 3 or 4");
        let shift = args.len() as u32 - 2;
        NAMonomial {
            degree: args.iter().map(|a| a.degree).sum::<u32>() + shift,
            level: args.iter().map(|a| a.level).sum::<u32>() + shift,
            node: Node::Lambda(args),
        }
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Homological level.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn internal_degree(&self) -> u32 {
        self.degree - self.level
    }

    pub fn as_generator(&self) -> Option<&Gen> {
        match &self.node {
            Node::Gen(g) => Some(g),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<(&NAMonomial, &NAMonomial)> {
        match &self.node {
            Node::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn lambda_args(&self) -> Option<&[NAMonomial]> {
        match &self.node {
            Node::Lambda(args) => Some(args),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match &self.node {
            Node::Gen(g) => g.name.to_string(),
            Node::Product(a, b) => format!("[{},{}]", a.render(), b.render()),
            Node::Lambda(args) => {
                let inner: Vec<String> = args.iter().map(|a| a.render()).collect();
                format!("λ{}({})", args.len(), inner.join(","))
            }
        }
    }

    /// The canonical representative in the graded-commutative quotient, with
    /// `true` for a sign flip, or `None` when the monomial vanishes there.
    pub fn canonical(&self) -> Option<(bool, NAMonomial)> {
        match &self.node {
            Node::Gen(_) => Some((false, self.clone())),
            Node::Product(a, b) => {
                let (sa, ca) = a.canonical()?;
                let (sb, cb) = b.canonical()?;
                let (s, m) = orient(ca, cb)?;
                Some((s ^ sa ^ sb, m))
            }
            Node::Lambda(args) => {
                let mut flip = false;
                let mut canon = Vec::with_capacity(args.len());
                for a in args {
                    let (s, c) = a.canonical()?;
                    flip ^= s;
                    canon.push(c);
                }
                let (s, sorted) = sort_args(canon)?;
                Some((flip ^ s, NAMonomial::lambda(sorted)))
            }
        }
    }
}

/// Orients the product of two canonical monomials.
fn orient(a: NAMonomial, b: NAMonomial) -> Option<(bool, NAMonomial)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((false, NAMonomial::product(a, b))),
        std::cmp::Ordering::Equal => odd(a.degree).then(|| (false, NAMonomial::product(a, b))),
        std::cmp::Ordering::Greater => {
            let flip = !odd(a.degree * b.degree);
            Some((flip, NAMonomial::product(b, a)))
        }
    }
}

/// Sorts λ arguments, tracking the Koszul sign. Repeated even arguments kill
/// the node.
fn sort_args(mut args: Vec<NAMonomial>) -> Option<(bool, Vec<NAMonomial>)> {
    let mut flip = false;
    for i in 1..args.len() {
        let mut j = i;
        while j > 0 && args[j - 1] > args[j] {
            flip ^= !odd(args[j - 1].degree * args[j].degree);
            args.swap(j - 1, j);
            j -= 1;
        }
    }
    if args.windows(2).any(|w| w[0] == w[1] && !odd(w[0].degree)) {
        return None;
    }
    Some((flip, args))
}

/// `ε_I(p)` for the permutation `p` acting on slots of the given degrees:
/// slot `k` of the result holds input `p[k]`, and each adjacent transposition
/// of degrees `i, j` contributes `(-1)^{ij+1}`.
pub fn koszul_sign(perm: &[usize], degrees: &[u32]) -> i32 {
    assert_eq!(perm.len(), degrees.len(), "permutation and degree list differ in length");
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        assert!(p < perm.len() && !seen[p], "not a permutation: {perm:?}");
        seen[p] = true;
    }
    let mut s = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && !odd(degrees[perm[a]] * degrees[perm[b]]) {
                s = -s;
            }
        }
    }
    s
}

/// A permutation together with the degrees of the slots it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulAction {
    pub perm: Vec<usize>,
    pub degrees: Vec<u32>,
}

impl KoszulAction {
    pub fn new(perm: Vec<usize>, degrees: Vec<u32>) -> Self {
        koszul_sign(&perm, &degrees);
        KoszulAction { perm, degrees }
    }

    pub fn sign(&self) -> i32 {
        koszul_sign(&self.perm, &self.degrees)
    }

    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.perm.iter().map(|&i| items[i].clone()).collect()
    }

    /// Degrees of the permuted slots.
    pub fn output_degrees(&self) -> Vec<u32> {
        self.apply(&self.degrees)
    }

    /// First `self`, then `next` on the result.
    pub fn then(&self, next: &[usize]) -> KoszulAction {
        KoszulAction::new(next.iter().map(|&k| self.perm[k]).collect(), self.degrees.clone())
    }
}

/// A finite linear combination of product trees.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct NAElement {
    terms: BTreeMap<NAMonomial, Q>,
}

impl NAElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Gen) -> Self {
        Self::monomial(NAMonomial::generator(g))
    }

    pub fn monomial(m: NAMonomial) -> Self {
        Self::term(m, q(1))
    }

    pub fn term(m: NAMonomial, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: NAMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &Self) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c * v);
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut e = Self::zero();
        e.add_scaled(c, self);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NAMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &NAMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Degree of the first term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, NAElement> {
        let mut out: BTreeMap<u32, NAElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// The raw product `x·y`, no symmetrization.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(NAMonomial::product(a.clone(), b.clone()), c * d);
            }
        }
        out
    }

    /// Image in the graded-commutative quotient.
    pub fn canonical(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((flip, cm)) = m.canonical() {
                out.add_term(cm, if flip { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// `[x,y]` on canonical elements.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                if let Some((flip, m)) = orient(a.clone(), b.clone()) {
                    let v = c * d;
                    out.add_term(m, if flip { -v } else { v });
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&m.render());
        }
        s
    }
}

impl fmt::Debug for NAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for NAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for NAElement {
    type Output = NAElement;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl Sub for NAElement {
    type Output = NAElement;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl AddAssign for NAElement {
    fn add_assign(&mut self, rhs: Self) {
        self.add_scaled(&q(1), &rhs);
    }
}

impl SubAssign for NAElement {
    fn sub_assign(&mut self, rhs: Self) {
        self.add_scaled(&q(-1), &rhs);
    }
}

impl Neg for NAElement {
    type Output = NAElement;
    fn neg(self) -> Self {
        self.scaled(&q(-1))
    }
}

/// `½(x·y + (-1)^{|x||y|+1} y·x)` in the raw algebra.
pub fn symmetrized(x: &NAElement, y: &NAElement) -> NAElement {
    let half = qr(1, 2);
    let mut out = NAElement::zero();
    for (a, c) in &x.terms {
        for (b, d) in &y.terms {
            let v = &half * c * d;
            out.add_term(NAMonomial::product(a.clone(), b.clone()), v.clone());
            out.add_term(NAMonomial::product(b.clone(), a.clone()), sign(a.degree * b.degree + 1) * v);
        }
    }
    out
}

/// A derivation of the raw product of the given parity, fixed by its values
/// on the leaves (generators and λ-nodes).
pub fn apply_derivation(e: &NAElement, parity: u32, on_leaf: &mut impl FnMut(&NAMonomial) -> NAElement) -> NAElement {
    fn go(m: &NAMonomial, parity: u32, f: &mut impl FnMut(&NAMonomial) -> NAElement) -> NAElement {
        match &m.node {
            Node::Product(a, b) => {
                let da = go(a, parity, f);
                let db = go(b, parity, f);
                let mut out = da.mul(&NAElement::monomial((**b).clone()));
                out.add_scaled(&sign(parity * a.degree), &NAElement::monomial((**a).clone()).mul(&db));
                out
            }
            _ => f(m),
        }
    }
    let mut out = NAElement::zero();
    for (m, c) in &e.terms {
        out.add_scaled(c, &go(m, parity, on_leaf));
    }
    out
}

/// The λ-node on canonical arguments, extended multilinearly. Arity 3 or 4.
pub fn lambda(args: &[&NAElement]) -> NAElement {
    assert!(matches!(args.len(), 3 | 4), "λ-nodes have arity 3 or 4");
    let mut out = NAElement::zero();
    let mut stack: Vec<(Vec<NAMonomial>, Q)> = vec![(Vec::new(), q(1))];
    for a in args {
        let mut next = Vec::new();
        for (prefix, c) in &stack {
            for (m, v) in &a.terms {
                let mut p = prefix.clone();
                p.push(m.clone());
                next.push((p, c * v));
            }
        }
        stack = next;
    }
    for (ms, c) in stack {
        if let Some((flip, sorted)) = sort_args(ms) {
            out.add_term(NAMonomial::lambda(sorted), if flip { -c } else { c });
        }
    }
    out
}

/// `[x,[y,z]] - [[x,y],z] + (-1)^{qr} [[x,z],y]` on canonical elements.
pub fn lambda3_boundary(x: &NAElement, y: &NAElement, z: &NAElement) -> NAElement {
    let mut out = NAElement::zero();
    for (qd, y) in y.homogeneous_parts() {
        for (rd, z) in z.homogeneous_parts() {
            out += x.bracket(&y.bracket(&z));
            out -= x.bracket(&y).bracket(&z);
            out.add_scaled(&sign(qd * rd), &x.bracket(&z).bracket(&y));
        }
    }
    out
}

/// The Jacobiator; the same combination as [`lambda3_boundary`].
pub fn jacobiator(x: &NAElement, y: &NAElement, z: &NAElement) -> NAElement {
    lambda3_boundary(x, y, z)
}

/// The two readings of the third group of the λ₄ boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lambda4Variant {
    /// `λ₃([x,z], y, z)`, as printed.
    AsPrinted,
    /// `λ₃([x,z], y, w)`, matching the other groups.
    Symmetric,
}

impl Lambda4Variant {
    pub const ALL: [Lambda4Variant; 2] = [Lambda4Variant::AsPrinted, Lambda4Variant::Symmetric];

    pub fn describe(self) -> &'static str {
        match self {
            Lambda4Variant::AsPrinted => "λ3([x,z],y,z)",
            Lambda4Variant::Symmetric => "λ3([x,z],y,w)",
        }
    }
}

/// The λ₄ boundary in the variant that squares to zero.
pub fn lambda4_boundary(x: &NAElement, y: &NAElement, z: &NAElement, w: &NAElement) -> NAElement {
    lambda4_boundary_with(Lambda4Variant::Symmetric, x, y, z, w)
}

/// The eight-group λ₄ boundary, in total-degree signs:
///
/// ```text
/// (-1)^p [x,λ(y,z,w)] + [λ(x,y,z),w] - (-1)^{rs} [λ(x,y,w),z] + (-1)^{q(r+s)} [λ(x,z,w),y]
///   - (λ([x,y],z,w) + λ(x,y,[z,w]))
///   + (-1)^{qr} (λ([x,z],y,·) + λ(x,z,[y,w]))
///   - (-1)^{s(q+r)} (λ([x,w],y,z) + λ(x,w,[y,z]))
/// ```
pub fn lambda4_boundary_with(
    variant: Lambda4Variant,
    x: &NAElement,
    y: &NAElement,
    z: &NAElement,
    w: &NAElement,
) -> NAElement {
    let mut out = NAElement::zero();
    for (p, x) in x.homogeneous_parts() {
        for (qd, y) in y.homogeneous_parts() {
            for (r, z) in z.homogeneous_parts() {
                for (s, w) in w.homogeneous_parts() {
                    out.add_scaled(&sign(p), &x.bracket(&lambda(&[&y, &z, &w])));
                    out += lambda(&[&x, &y, &z]).bracket(&w);
                    out.add_scaled(&-sign(r * s), &lambda(&[&x, &y, &w]).bracket(&z));
                    out.add_scaled(&sign(qd * (r + s)), &lambda(&[&x, &z, &w]).bracket(&y));
                    out -= lambda(&[&x.bracket(&y), &z, &w]);
                    out -= lambda(&[&x, &y, &z.bracket(&w)]);
                    let third = match variant {
                        Lambda4Variant::AsPrinted => &z,
                        Lambda4Variant::Symmetric => &w,
                    };
                    let e = sign(qd * r);
                    out.add_scaled(&e, &lambda(&[&x.bracket(&z), &y, third]));
                    out.add_scaled(&e, &lambda(&[&x, &z, &y.bracket(&w)]));
                    let e = -sign(s * (qd + r));
                    out.add_scaled(&e, &lambda(&[&x.bracket(&w), &y, &z]));
                    out.add_scaled(&e, &lambda(&[&x, &w, &y.bracket(&z)]));
                }
            }
        }
    }
    out
}

/// The quotient to the free graded Lie algebra: products become brackets and
/// λ-nodes vanish.
pub fn to_lie(e: &NAElement) -> LieElement<Gen> {
    fn go(m: &NAMonomial) -> LieElement<Gen> {
        match &m.node {
            Node::Gen(g) => LieElement::letter(g.clone()),
            Node::Product(a, b) => go(a).bracket(&go(b)),
            Node::Lambda(_) => LieElement::zero(),
        }
    }
    let mut out = LieElement::zero();
    for (m, c) in &e.terms {
        out.add_scaled(c, &go(m));
    }
    out
}

#[derive(Debug, Error)]
pub enum JacobiError {
    #[error("free Jacobi algebras are only constructed through level 2 (requested level {0}); higher canonical operations are out of scope")]
    LevelOutOfScope(u32),
    #[error("∂{0} = {1} does not have degree {2}")]
    Degree(String, String, u32),
    #[error("∂{0} = {1} does not lie in level 0")]
    Level(String, String),
    #[error("∂{0} = {1} is not linear; a chain complex of generators is required")]
    NotLinear(String, String),
    #[error("∂∂{0} = {1}")]
    NotSquareZero(String, String),
    #[error(transparent)]
    Dgl(#[from] DglError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A differential graded non-associative algebra: the free graded-commutative
/// algebra on generators and λ-nodes, truncated at a homological level and a
/// total degree cutoff `c` (bases through `c + 1`).
///
/// On generators `∂` is given; on λ-nodes it is
///
/// ```text
/// ∂λ₃(a,b,c)   = λ₃-boundary(a,b,c) - Σ ± λ₃(…,∂a_k,…)
/// ∂λ₄(x,y,z,w) = λ₄-boundary(x,y,z,w) + Σ ± λ₄(…,∂x_k,…)
/// ```
///
/// with Koszul signs `(-1)^{|a_1|+…+|a_{k-1}|}`; for cycles the correction terms
/// vanish.
pub struct Dgna {
    generators: Vec<Gen>,
    differential: BTreeMap<Gen, NAElement>,
    max_level: u32,
    cutoff: u32,
    bases: Vec<Vec<NAMonomial>>,
    memo: Mutex<HashMap<NAMonomial, NAElement>>,
}

impl fmt::Debug for Dgna {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dgna")
            .field("generators", &self.generators.iter().map(|g| (g.name.to_string(), g.degree)).collect::<Vec<_>>())
            .field("max_level", &self.max_level)
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

impl Dgna {
    pub fn new(
        generators: Vec<Gen>,
        differential: BTreeMap<Gen, NAElement>,
        max_level: u32,
        cutoff: u32,
    ) -> Result<Self, JacobiError> {
        if max_level > 2 {
            return Err(JacobiError::LevelOutOfScope(max_level));
        }
        let mut diff = BTreeMap::new();
        for (g, v) in differential {
            let v = v.canonical();
            if v.terms.keys().any(|m| m.degree + 1 != g.degree) {
                return Err(JacobiError::Degree(g.name.to_string(), v.render(), g.degree.saturating_sub(1)));
            }
            if v.terms.keys().any(|m| m.level > 0) {
                return Err(JacobiError::Level(g.name.to_string(), v.render()));
            }
            if !v.is_zero() {
                diff.insert(g, v);
            }
        }
        let bases = enumerate(&generators, max_level, cutoff + 1);
        let out = Dgna { generators, differential: diff, max_level, cutoff, bases, memo: Mutex::new(HashMap::new()) };
        for g in &out.generators {
            let dd = out.d(&out.d(&NAElement::generator(g.clone())));
            if !dd.is_zero() {
                return Err(JacobiError::NotSquareZero(g.name.to_string(), dd.render()));
            }
        }
        Ok(out)
    }

    pub fn generators(&self) -> &[Gen] {
        &self.generators
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Canonical monomials of total degree `n`, sorted.
    pub fn basis(&self, n: u32) -> &[NAMonomial] {
        self.bases.get(n as usize).map_or(&[], |b| b.as_slice())
    }

    pub fn dim(&self, n: u32) -> usize {
        self.basis(n).len()
    }

    /// Basis counts per total degree and level.
    pub fn level_dims(&self, n: u32) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for m in self.basis(n) {
            *out.entry(m.level).or_insert(0) += 1;
        }
        out
    }

    pub fn differential_of(&self, g: &Gen) -> NAElement {
        self.differential.get(g).cloned().unwrap_or_default()
    }

    /// `∂` on a canonical element.
    pub fn d(&self, e: &NAElement) -> NAElement {
        let mut out = NAElement::zero();
        for (m, c) in &e.terms {
            out.add_scaled(c, &self.d_monomial(m));
        }
        out
    }

    pub fn d_monomial(&self, m: &NAMonomial) -> NAElement {
        if let Some(v) = self.memo.lock().expect("memo").get(m) {
            return v.clone();
        }
        let v = match &m.node {
            Node::Gen(g) => self.differential_of(g),
            Node::Product(a, b) => {
                let ea = NAElement::monomial((**a).clone());
                let eb = NAElement::monomial((**b).clone());
                let mut out = self.d_monomial(a).bracket(&eb);
                out.add_scaled(&sign(a.degree), &ea.bracket(&self.d_monomial(b)));
                out
            }
            Node::Lambda(args) => {
                let els: Vec<NAElement> = args.iter().map(|a| NAElement::monomial(a.clone())).collect();
                let (mut out, c) = if args.len() == 3 {
                    (lambda3_boundary(&els[0], &els[1], &els[2]), q(-1))
                } else {
                    (lambda4_boundary(&els[0], &els[1], &els[2], &els[3]), q(1))
                };
                let mut prior = 0;
                for (k, a) in args.iter().enumerate() {
                    let da = self.d_monomial(a);
                    if !da.is_zero() {
                        let mut slots = els.clone();
                        slots[k] = da;
                        let refs: Vec<&NAElement> = slots.iter().collect();
                        out.add_scaled(&(&c * sign(prior)), &lambda(&refs));
                    }
                    prior += a.degree;
                }
                out
            }
        };
        self.memo.lock().expect("memo").insert(m.clone(), v.clone());
        v
    }

    /// Coordinates of a canonical element of degree `n` on the basis.
    pub fn decompose(&self, e: &NAElement, n: u32) -> SparseVec<Q> {
        let basis = self.basis(n);
        let mut out = SparseVec::new();
        for (m, c) in &e.terms {
            let i = basis.binary_search(m).unwrap_or_else(|_| panic!("{} is not a basis monomial of degree {n}", m.render()));
            out.insert(i, c.clone());
        }
        out
    }

    pub fn compose(&self, v: &SparseVec<Q>, n: u32) -> NAElement {
        let basis = self.basis(n);
        let mut out = NAElement::zero();
        for (&i, c) in v {
            out.add_term(basis[i].clone(), c.clone());
        }
        out
    }

    /// Matrix of `∂ : J_n → J_{n-1}`.
    pub fn boundary_matrix(&self, n: u32) -> SparseMatrix<Q> {
        let cols: Vec<SparseVec<Q>> = self
            .basis(n)
            .iter()
            .map(|m| if n <= 1 { SparseVec::new() } else { self.decompose(&self.d_monomial(m), n - 1) })
            .collect();
        SparseMatrix::from_sparse_columns(if n == 0 { 0 } else { self.dim(n - 1) }, &cols)
    }

    /// Basis monomials with `∂∂ ≠ 0`, over every degree through `c + 1`.
    pub fn square_zero_violations(&self) -> Vec<(NAMonomial, NAElement)> {
        let mut out = Vec::new();
        for n in 1..=self.cutoff + 1 {
            for m in self.basis(n) {
                let dd = self.d(&self.d_monomial(m));
                if !dd.is_zero() {
                    out.push((m.clone(), dd));
                }
            }
        }
        out
    }

    pub fn chain_complex(&self, through: u32) -> ChainComplex<Q> {
        let through = through.min(self.cutoff);
        let mut c = ChainComplex::new();
        for n in 1..=through + 1 {
            c.set_labels(n as i64, self.basis(n).iter().map(|m| m.render()).collect());
        }
        for n in 2..=through + 1 {
            c.set_boundary(n as i64, self.boundary_matrix(n)).expect("shapes match the bases");
        }
        c
    }

    pub fn homology_in_degree(&self, n: u32) -> Result<HomologyAt<Q>, JacobiError> {
        Ok(homology_at(&self.boundary_matrix(n), &self.boundary_matrix(n + 1), self.dim(n))?)
    }

    /// The quotient map to the free graded Lie algebra on the generators.
    pub fn theta(&self, e: &NAElement) -> LieElement<Gen> {
        to_lie(e)
    }

    /// Compares `θ : J → 𝕃(V)` degree by degree through `through`.
    pub fn compare_with_lie(&self, lie: &Dgl<Gen>, through: u32) -> Result<Vec<ThetaRow>, JacobiError> {
        let through = through.min(self.cutoff).min(lie.cutoff());
        let mut rows = Vec::new();
        for n in 1..=through {
            let lb = lie.basis(n)?;
            let mut chain_map = true;
            for m in self.basis(n).iter().chain(self.basis(n + 1)) {
                let lhs = to_lie(&self.d_monomial(m));
                let rhs = lie.d(&to_lie(&NAElement::monomial(m.clone())));
                chain_map &= lhs == rhs;
            }
            let images: Vec<Vec<Q>> =
                self.basis(n).iter().map(|m| lb.decompose(&to_lie(&NAElement::monomial(m.clone())))).collect::<Result<_, _>>().map_err(DglError::from)?;
            let surjective = rank(&SparseMatrix::from_columns(lb.len(), &images)) == lb.len();
            let hj = self.homology_in_degree(n)?;
            let hl = lie.homology_in_degree(n)?;
            let mut classes = Vec::new();
            for z in &hj.representatives {
                let zl = to_lie(&self.compose(&crate::linalg::to_sparse(z), n));
                classes.push(hl.class_of(&zl).expect("θ of a cycle is a cycle"));
            }
            let induced_rank = rank(&SparseMatrix::from_columns(hl.betti, &classes));
            rows.push(ThetaRow {
                degree: n,
                dim_j: self.dim(n),
                dim_l: lb.len(),
                betti_j: hj.betti,
                betti_l: hl.betti,
                induced_rank,
                surjective,
                chain_map,
            });
        }
        Ok(rows)
    }
}

/// One degree of the comparison `θ : J → 𝕃(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRow {
    pub degree: u32,
    pub dim_j: usize,
    pub dim_l: usize,
    pub betti_j: usize,
    pub betti_l: usize,
    pub induced_rank: usize,
    pub surjective: bool,
    pub chain_map: bool,
}

impl ThetaRow {
    pub fn is_quasi_iso(&self) -> bool {
        self.chain_map && self.betti_j == self.induced_rank && self.betti_l == self.induced_rank
    }
}

/// Canonical monomials by total degree, through `top`, of level at most
/// `max_level`.
fn enumerate(gens: &[Gen], max_level: u32, top: u32) -> Vec<Vec<NAMonomial>> {
    let mut by: BTreeMap<(u32, u32), Vec<NAMonomial>> = BTreeMap::new();
    for n in 1..=top {
        for l in 0..=max_level {
            let mut out = Vec::new();
            if l == 0 {
                out.extend(gens.iter().filter(|g| g.degree == n).map(|g| NAMonomial::generator(g.clone())));
            }
            for da in 1..=n / 2 {
                let db = n - da;
                for la in 0..=l {
                    let lb = l - la;
                    if da == db && la > lb {
                        continue;
                    }
                    let (Some(xs), Some(ys)) = (by.get(&(da, la)), by.get(&(db, lb))) else { continue };
                    for (i, a) in xs.iter().enumerate() {
                        let start = if da == db && la == lb { i } else { 0 };
                        for b in &ys[start..] {
                            if a < b || (a == b && odd(a.degree)) {
                                out.push(NAMonomial::product(a.clone(), b.clone()));
                            }
                        }
                    }
                }
            }
            for arity in [3u32, 4] {
                let shift = arity - 2;
                if shift > l || n < arity + shift {
                    continue;
                }
                let (deg, lev) = (n - shift, l - shift);
                let mut pool: Vec<&NAMonomial> = by
                    .iter()
                    .filter(|(&(d, v), _)| d + arity - 1 <= deg && v <= lev)
                    .flat_map(|(_, ms)| ms.iter())
                    .collect();
                pool.sort();
                let mut acc = Vec::new();
                choose(&pool, 0, arity as usize, deg, lev, &mut acc, &mut out);
            }
            out.sort();
            by.insert((n, l), out);
        }
    }
    let mut bases = vec![Vec::new(); top as usize + 1];
    for ((n, _), ms) in by {
        bases[n as usize].extend(ms);
    }
    for b in &mut bases {
        b.sort();
    }
    bases
}

/// Nondecreasing argument lists from `pool`, repeats only for odd degrees.
fn choose(
    pool: &[&NAMonomial],
    start: usize,
    k: usize,
    deg: u32,
    lev: u32,
    acc: &mut Vec<NAMonomial>,
    out: &mut Vec<NAMonomial>,
) {
    if k == 0 {
        if deg == 0 && lev == 0 {
            out.push(NAMonomial::lambda(acc.clone()));
        }
        return;
    }
    for i in start..pool.len() {
        let m = pool[i];
        if m.degree + (k as u32 - 1) > deg {
            break;
        }
        if m.level > lev {
            continue;
        }
        if k == 1 && m.degree != deg {
            continue;
        }
        let next = if odd(m.degree) { i } else { i + 1 };
        acc.push(m.clone());
        choose(pool, next, k - 1, deg - m.degree, lev - m.level, acc, out);
        acc.pop();
    }
}

/// The free graded-commutative algebra on the generators of `v`, with zero
/// differential unless `v` has one. Same as [`free_jacobi_level`] at level 0.
pub fn free_na_algebra(generators: &[Gen], cutoff: u32) -> Dgna {
    Dgna::new(generators.to_vec(), BTreeMap::new(), 0, cutoff).expect("zero differential")
}

/// The free Jacobi algebra on the chain complex spanned by the generators of
/// `v`, truncated at homological level `level ≤ 2`.
///
/// Level 0 is the free algebra on `V` with `∂` extending `∂_V`; level 1 adds
/// the λ₃-nodes on arbitrary arguments, level 2 the λ₄-nodes and λ₃-nodes with
/// a level-1 argument.
pub fn free_jacobi_level(v: &Dgl<Gen>, level: u32, cutoff: u32) -> Result<Dgna, JacobiError> {
    if level > 2 {
        return Err(JacobiError::LevelOutOfScope(level));
    }
    let mut diff = BTreeMap::new();
    for g in v.generators() {
        let dg = v.differential_of(g);
        let mut e = NAElement::zero();
        for (m, c) in dg.terms() {
            let Some(l) = m.as_letter() else {
                return Err(JacobiError::NotLinear(g.name.to_string(), dg.render()));
            };
            e.add_term(NAMonomial::generator(l.clone()), c.clone());
        }
        diff.insert(g.clone(), e);
    }
    Dgna::new(v.generators().to_vec(), diff, level, cutoff)
}

/// A truncated differential graded algebra seen through coordinates: bases,
/// boundary matrices and a bilinear product.
pub trait ChainAlgebra {
    /// Products and homology are considered through this degree.
    fn top_degree(&self) -> u32;
    fn dim(&self, n: u32) -> usize;
    /// `∂ : C_n → C_{n-1}`.
    fn boundary(&self, n: u32) -> SparseMatrix<Q>;
    fn product(&self, p: u32, a: &SparseVec<Q>, q: u32, b: &SparseVec<Q>) -> SparseVec<Q>;
    fn render(&self, n: u32, v: &SparseVec<Q>) -> String;
}

impl ChainAlgebra for Dgna {
    fn top_degree(&self) -> u32 {
        self.cutoff
    }

    fn dim(&self, n: u32) -> usize {
        Dgna::dim(self, n)
    }

    fn boundary(&self, n: u32) -> SparseMatrix<Q> {
        self.boundary_matrix(n)
    }

    fn product(&self, p: u32, a: &SparseVec<Q>, q: u32, b: &SparseVec<Q>) -> SparseVec<Q> {
        let e = self.compose(a, p).bracket(&self.compose(b, q));
        self.decompose(&e, p + q)
    }

    fn render(&self, n: u32, v: &SparseVec<Q>) -> String {
        self.compose(v, n).render()
    }
}

/// A DGL viewed as a non-associative algebra.
impl ChainAlgebra for Dgl<Gen> {
    fn top_degree(&self) -> u32 {
        self.cutoff()
    }

    fn dim(&self, n: u32) -> usize {
        self.basis(n).map_or(0, |b| b.len())
    }

    fn boundary(&self, n: u32) -> SparseMatrix<Q> {
        self.boundary_matrix(n).map(|m| (*m).clone()).unwrap_or_else(|_| SparseMatrix::zeros(0, 0))
    }

    fn product(&self, p: u32, a: &SparseVec<Q>, q: u32, b: &SparseVec<Q>) -> SparseVec<Q> {
        let (Ok(bp), Ok(bq), Ok(bn)) = (self.basis(p), self.basis(q), self.basis(p + q)) else {
            return SparseVec::new();
        };
        bn.decompose_sparse(&bp.compose_sparse(a).bracket(&bq.compose_sparse(b)))
    }

    fn render(&self, n: u32, v: &SparseVec<Q>) -> String {
        self.basis(n).map(|b| b.compose_sparse(v).render()).unwrap_or_default()
    }
}

/// Result of testing antisymmetry and Jacobi on homology representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub through: u32,
    pub betti: BTreeMap<u32, usize>,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl JacobiReport {
    pub fn is_jacobi(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `H′_*` is a graded Lie algebra through `through`: graded
/// antisymmetry and the Jacobi identity hold on representatives modulo
/// boundaries.
pub fn jacobi_report(alg: &impl ChainAlgebra, through: u32) -> Result<JacobiReport, JacobiError> {
    let through = through.min(alg.top_degree());
    let mut hs: BTreeMap<u32, HomologyAt<Q>> = BTreeMap::new();
    for n in 1..=through {
        hs.insert(n, homology_at(&alg.boundary(n), &alg.boundary(n + 1), alg.dim(n))?);
    }
    let reps: Vec<(u32, SparseVec<Q>)> = hs
        .iter()
        .flat_map(|(&n, h)| h.representatives.iter().map(move |z| (n, crate::linalg::to_sparse(z))))
        .collect();
    let is_boundary = |n: u32, v: &SparseVec<Q>| -> bool {
        v.is_empty() || hs[&n].is_boundary(&crate::linalg::to_dense(v, alg.dim(n)))
    };
    let mut report = JacobiReport {
        through,
        betti: hs.iter().map(|(&n, h)| (n, h.betti)).collect(),
        checked: 0,
        failures: Vec::new(),
    };
    for (p, a) in &reps {
        for (qd, b) in &reps {
            let n = p + qd;
            if n > through {
                continue;
            }
            let mut v = alg.product(*p, a, *qd, b);
            let ba = alg.product(*qd, b, *p, a);
            let e = -sign(p * qd + 1);
            for (i, c) in ba {
                let slot = v.entry(i).or_insert_with(Q::zero);
                *slot += &e * c;
            }
            v.retain(|_, c| !c.is_zero());
            report.checked += 1;
            if !is_boundary(n, &v) {
                report.failures.push(format!("antisymmetry fails on ({}, {})", alg.render(*p, a), alg.render(*qd, b)));
            }
        }
    }
    for (p, a) in &reps {
        for (qd, b) in &reps {
            for (r, c) in &reps {
                let n = p + qd + r;
                if n > through {
                    continue;
                }
                let bc = alg.product(*qd, b, *r, c);
                let ab = alg.product(*p, a, *qd, b);
                let ac = alg.product(*p, a, *r, c);
                let mut v = alg.product(*p, a, qd + r, &bc);
                for (i, x) in alg.product(p + qd, &ab, *r, c) {
                    *v.entry(i).or_insert_with(Q::zero) -= x;
                }
                let e = sign(qd * r);
                for (i, x) in alg.product(p + r, &ac, *qd, b) {
                    *v.entry(i).or_insert_with(Q::zero) += &e * x;
                }
                v.retain(|_, x| !x.is_zero());
                report.checked += 1;
                if !is_boundary(n, &v) {
                    report.failures.push(format!(
                        "Jacobi fails on ({}, {}, {})",
                        alg.render(*p, a),
                        alg.render(*qd, b),
                        alg.render(*r, c)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Whether `H′_*` is a graded Lie algebra through `through`.
pub fn is_jacobi(alg: &impl ChainAlgebra, through: u32) -> Result<bool, JacobiError> {
    Ok(jacobi_report(alg, through)?.is_jacobi())
}
