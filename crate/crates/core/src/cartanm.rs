//! Lie superalgebras from a matrix and an odd-generator set.
//!
//! Given an `r×r` matrix `A` and a parity assignment for the generators,
//! the algebra on generators `e_i, f_i, h_i` with relations
//! `[h_i, h_j] = 0`, `[e_i, f_j] = δ_ij h_i`, `[h_i, e_j] = a_ij e_j`,
//! `[h_i, f_j] = −a_ij f_j` carries the ℤ-grading by letter count. Its
//! quotient by the maximal graded ideal meeting the zero level trivially
//! is computed degree by degree: the degree-`j` span (left-normed bracket
//! words in the `e_i`) is quotiented by the kernel of the lowering maps —
//! an element is in the radical exactly when every `ad f_k` sends it to
//! zero in the already-quotiented degree `j−1`. The lowering action is
//! evaluated through the recursion
//!
//! ```text
//! ad f_k [W, e_i] = [ad f_k W, e_i]
//!                 + (−1)^{p_k p(W)} (−1)^{p_k p_i} δ_{ki} α_W(h_k) · W
//! ```
//!
//! with base case `ad f_k e_i = −(−1)^{p_i} δ_{ki} h_k`, and the weight
//! function `α_W(h_k) = Σ_t a_{k, i_t}` over the letters of `W`. Matrix
//! entries live in any [`Scalar`] field — exact rationals, or univariate
//! rational functions for the one-parameter family.
//!
//! The registry carries the split rank-`k` matrices (`cartan_sl(k)`) and
//! the three exceptional matrices `D_a` (3×3, one symbolic parameter,
//! total dimension 17 away from `a ∈ {0, −1}`), `F` (4×4, total 40) and
//! `G` (3×3, total 31), each with the first generator odd.
//!
//! The module also houses dual Coxeter numbers: for the classical
//! families they are computed from explicit root systems in an
//! orthogonal/symplectic coordinate basis (`h∨ = ½(θ + 2ρ | θ)` rescaled
//! so the longest root of positive norm has square length 2), and for
//! F(4), G(3) they are stored constants.

use crate::error::{Error, Result};
use crate::rat::{rat, rat_int, Rat};
use crate::ratfun::{RatFun, Scalar};
use num_traits::{One, Zero};
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Specification and registry
// ---------------------------------------------------------------------------

/// A matrix with a parity marking of its generator indices.
#[derive(Debug, Clone)]
pub struct CartanSpec<S: Scalar> {
    pub name: String,
    /// Row-major `r×r` matrix; `a[i][j]` is the eigenvalue of `h_i` on `e_j`.
    pub a: Vec<Vec<S>>,
    /// Parity of each generator (true = odd).
    pub odd: Vec<bool>,
}

impl<S: Scalar> CartanSpec<S> {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    fn check(&self) -> Result<()> {
        let r = self.a.len();
        if r == 0 || self.a.iter().any(|row| row.len() != r) || self.odd.len() != r {
            return Err(Error::ShapeMismatch(
                format!("{}×? matrix", r),
                "square matrix with one parity flag per row".into(),
            ));
        }
        Ok(())
    }
}

fn rf(n: i64) -> RatFun {
    RatFun::constant(rat_int(n))
}

/// Named matrices: `D_a` (symbolic parameter), `F`, `G`, `cartan_sl(k)`.
pub fn registry(name: &str) -> Result<CartanSpec<RatFun>> {
    let trimmed = name.trim();
    match trimmed {
        "D_a" => {
            let a = RatFun::var();
            Ok(CartanSpec {
                name: trimmed.into(),
                a: vec![
                    vec![rf(0), rf(-1), -a],
                    vec![rf(-1), rf(2), rf(0)],
                    vec![rf(-1), rf(0), rf(2)],
                ],
                odd: vec![true, false, false],
            })
        }
        "F" => Ok(CartanSpec {
            name: trimmed.into(),
            a: vec![
                vec![rf(0), rf(-1), rf(0), rf(0)],
                vec![rf(-1), rf(2), rf(-2), rf(0)],
                vec![rf(0), rf(-1), rf(2), rf(-1)],
                vec![rf(0), rf(0), rf(-1), rf(2)],
            ],
            odd: vec![true, false, false, false],
        }),
        "G" => Ok(CartanSpec {
            name: trimmed.into(),
            a: vec![
                vec![rf(0), rf(-1), rf(0)],
                vec![rf(-1), rf(2), rf(-3)],
                vec![rf(0), rf(-1), rf(2)],
            ],
            odd: vec![true, false, false],
        }),
        _ => {
            if let Some(inner) = trimmed
                .strip_prefix("cartan_sl(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let k: usize = inner
                    .parse()
                    .map_err(|_| Error::UnknownName(trimmed.into()))?;
                if k < 2 {
                    return Err(Error::Precondition("cartan_sl needs k ≥ 2".into()));
                }
                let r = k - 1;
                let mut a = vec![vec![rf(0); r]; r];
                for i in 0..r {
                    a[i][i] = rf(2);
                    if i + 1 < r {
                        a[i][i + 1] = rf(-1);
                        a[i + 1][i] = rf(-1);
                    }
                }
                Ok(CartanSpec {
                    name: trimmed.into(),
                    a,
                    odd: vec![false; r],
                })
            } else {
                Err(Error::UnknownName(trimmed.into()))
            }
        }
    }
}

/// How many inequivalent (matrix, odd set) pairs produce this algebra
/// (recorded metadata; not used by the construction).
pub fn inequivalent_pair_count(name: &str) -> Option<usize> {
    match name {
        "D_a" => Some(2),
        "F" => Some(6),
        "G" => Some(4),
        _ => None,
    }
}

/// Parse a custom matrix: rows separated by `;`, entries by `,`, each
/// entry a rational with an optional symbolic factor `a` (e.g. `-a`, `2a`).
pub fn parse_cartan_matrix(rows: &str, odd_indices: &[usize]) -> Result<CartanSpec<RatFun>> {
    let mut a: Vec<Vec<RatFun>> = Vec::new();
    for row in rows.split(';') {
        let mut out = Vec::new();
        for entry in row.split(',') {
            out.push(parse_entry(entry.trim())?);
        }
        a.push(out);
    }
    let r = a.len();
    for idx in odd_indices {
        if *idx == 0 || *idx > r {
            return Err(Error::IndexOutOfRange {
                kind: "odd generator",
                index: *idx,
                max: r,
            });
        }
    }
    let odd = (1..=r).map(|i| odd_indices.contains(&i)).collect();
    let spec = CartanSpec {
        name: "custom".into(),
        a,
        odd,
    };
    spec.check()?;
    Ok(spec)
}

fn parse_entry(text: &str) -> Result<RatFun> {
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("matrix entry '{text}': {msg}"),
    };
    let mut s = text;
    let mut sign = Rat::one();
    if let Some(rest) = s.strip_prefix('-') {
        sign = -sign;
        s = rest.trim_start();
    }
    let symbolic = s.ends_with('a');
    if symbolic {
        s = s[..s.len() - 1].trim_end().trim_end_matches('*').trim_end();
    }
    let coeff = if s.is_empty() {
        if symbolic {
            Rat::one()
        } else {
            return Err(err("empty"));
        }
    } else {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let n: i64 = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: i64 = match den {
            Some(d) => d.trim().parse().map_err(|_| err("bad denominator"))?,
            None => 1,
        };
        if d == 0 {
            return Err(err("zero denominator"));
        }
        rat(n, d)
    };
    let base = if symbolic {
        RatFun::var()
    } else {
        RatFun::one()
    };
    Ok(base * &RatFun::constant(sign * coeff))
}

/// Specialize the symbolic parameter. The one-parameter family excludes
/// `a ∈ {0, −1}` (degenerate members), enforced here.
pub fn evaluate_parameter(spec: &CartanSpec<RatFun>, a0: &Rat) -> Result<CartanSpec<Rat>> {
    if a0.is_zero() || *a0 == -rat_int(1) {
        return Err(Error::Precondition(format!(
            "parameter value {} is excluded",
            a0
        )));
    }
    let mut rows = Vec::with_capacity(spec.a.len());
    for row in &spec.a {
        let mut out = Vec::with_capacity(row.len());
        for entry in row {
            out.push(entry.eval(a0)?);
        }
        rows.push(out);
    }
    Ok(CartanSpec {
        name: spec.name.clone(),
        a: rows,
        odd: spec.odd.clone(),
    })
}

// ---------------------------------------------------------------------------
// Dense elimination over an arbitrary scalar field
// ---------------------------------------------------------------------------

enum DenseInsert<S> {
    Independent,
    Dependent(Vec<S>),
}

/// Row echelon accumulator with combination tracking: every inserted row
/// is either recorded as a new basis vector or expressed over the
/// previously recorded ones.
struct DenseElim<S: Scalar> {
    rows: Vec<(usize, Vec<S>, Vec<S>)>, // (pivot, reduced row, combo over basis)
}

impl<S: Scalar> DenseElim<S> {
    fn new() -> Self {
        DenseElim { rows: Vec::new() }
    }

    fn basis_len(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut v: Vec<S>) -> Result<DenseInsert<S>> {
        let nb = self.rows.len();
        let mut combo = vec![S::zero(); nb];
        for (pivot, row, row_combo) in self.rows.iter() {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone() * &row[*pivot].try_inv()?;
            for (vj, rj) in v.iter_mut().zip(row.iter()) {
                let t = factor.clone() * rj;
                *vj = std::mem::replace(vj, S::zero()) - &t;
            }
            for (cj, rc) in combo.iter_mut().zip(row_combo.iter()) {
                let t = factor.clone() * rc;
                *cj = std::mem::replace(cj, S::zero()) + &t;
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => Ok(DenseInsert::Dependent(combo)),
            Some(pivot) => {
                let mut row_combo = combo;
                // the new row is v_original − Σ factor·rows, i.e. has
                // combination e_new over the extended basis; stored
                // combos of existing rows refer to basis indices < new
                for c in row_combo.iter_mut() {
                    *c = std::mem::replace(c, S::zero()).neg();
                }
                row_combo.push(S::one());
                self.rows.push((pivot, v, row_combo));
                Ok(DenseInsert::Independent)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Graded build
// ---------------------------------------------------------------------------

/// Which half is being generated: positive degrees by the raising
/// generators (lowered by `ad f_k`), or negative degrees by the lowering
/// generators (lowered by `ad e_k`). The sign pattern of the recursion
/// differs between the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Raising,
    Lowering,
}

/// Result of the degree-by-degree construction.
#[derive(Debug, Clone)]
pub struct GradedBuild {
    pub rank: usize,
    /// Dimension of each degree 1, 2, … (trailing zeros trimmed).
    pub dims: Vec<usize>,
    /// Witnessed two consecutive empty degrees within the bound.
    pub stabilized: bool,
    /// Basis words (letter sequences) per degree.
    pub words: Vec<Vec<Vec<usize>>>,
}

impl GradedBuild {
    /// Total dimension `r + 2·Σ dims` (defined when stabilized; the two
    /// halves mirror each other).
    pub fn total(&self) -> Option<usize> {
        if self.stabilized {
            Some(self.rank + 2 * self.dims.iter().sum::<usize>())
        } else {
            None
        }
    }
}

struct DegreeData<S> {
    /// Per basis word: (index of the degree-(j−1) prefix word, appended letter).
    words: Vec<(usize, usize)>,
    parity: Vec<bool>,
    /// Per basis word: the weight row `α_W(h_k)` for k = 0..r.
    weight: Vec<Vec<S>>,
    /// Per basis word, per lowering index k: coordinates of the lowering
    /// image in the degree-(j−1) basis (at degree 1: coordinates in h).
    lowered: Vec<Vec<Vec<S>>>,
    /// Candidate (prefix index, letter) → coordinates in this degree's basis.
    express: HashMap<(usize, usize), Vec<S>>,
}

/// Degree-by-degree construction of one half of the algebra, quotiented
/// by the radical; stops after two consecutive empty degrees or at
/// `max_degree`.
pub fn build_graded_side<S: Scalar>(
    spec: &CartanSpec<S>,
    max_degree: usize,
    side: Side,
) -> Result<GradedBuild> {
    spec.check()?;
    if max_degree < 1 {
        return Err(Error::Precondition("max_degree must be ≥ 1".into()));
    }
    let r = spec.rank();
    let a = &spec.a;
    let pgen: Vec<bool> = spec.odd.clone();

    // base lowering coefficient: value of ad (f_k|e_k) on the opposite
    // degree-1 letter k, as a multiple of h_k
    let base_coeff = |p: bool| -> S {
        match side {
            Side::Raising => {
                if p {
                    S::one()
                } else {
                    S::one().neg()
                }
            }
            Side::Lowering => S::one(),
        }
    };
    // extra sign (−1)^{p_k p_i} present only on the raising side
    let term2_extra = |pk: bool, pi: bool| -> bool {
        match side {
            Side::Raising => pk && pi,
            Side::Lowering => false,
        }
    };
    // sign of appending an h-vector to a degree-1 letter
    let append_sign: i64 = match side {
        Side::Raising => 1,
        Side::Lowering => -1,
    };

    let mut degrees: Vec<DegreeData<S>> = Vec::new();

    // degree 1: all letters, lowering straight into h
    {
        let mut d1 = DegreeData {
            words: (0..r).map(|i| (usize::MAX, i)).collect(),
            parity: pgen.clone(),
            weight: (0..r).map(|i| (0..r).map(|k| a[k][i].clone()).collect()).collect(),
            lowered: Vec::new(),
            express: HashMap::new(),
        };
        for i in 0..r {
            let mut per_k = Vec::with_capacity(r);
            for k in 0..r {
                let mut h = vec![S::zero(); r];
                if k == i {
                    h[k] = base_coeff(pgen[i]);
                }
                per_k.push(h);
            }
            d1.lowered.push(per_k);
        }
        degrees.push(d1);
    }

    let mut dims = vec![r];
    let mut consecutive_empty = 0usize;
    let mut stabilized = false;

    for j in 2..=max_degree {
        let prev_dim = degrees[j - 2].words.len();
        let mut data = DegreeData {
            words: Vec::new(),
            parity: Vec::new(),
            weight: Vec::new(),
            lowered: Vec::new(),
            express: HashMap::new(),
        };
        let mut elim: DenseElim<S> = DenseElim::new();
        let mut pending: Vec<((usize, usize), Vec<Vec<S>>)> = Vec::new();
        for b in 0..prev_dim {
            for i in 0..r {
                // coordinates of the lowering image for each k
                let mut per_k: Vec<Vec<S>> = Vec::with_capacity(r);
                for k in 0..r {
                    let mut out = vec![S::zero(); prev_dim];
                    // commuting the lowering operator past the last letter
                    if k == i {
                        let pw = degrees[j - 2].parity[b];
                        let pk = pgen[k];
                        let mut tau = degrees[j - 2].weight[b][k].clone();
                        let mut flip = pk && pw;
                        if term2_extra(pk, pgen[i]) {
                            flip = !flip;
                        }
                        if flip {
                            tau = tau.neg();
                        }
                        out[b] = out[b].clone() + &tau;
                    }
                    // lowering the prefix, then re-appending the letter
                    let v = &degrees[j - 2].lowered[b][k];
                    if j == 2 {
                        // v is an h-vector; [h, letter i] is a multiple of the letter
                        let mut sigma = S::zero();
                        for (t, vt) in v.iter().enumerate() {
                            if !vt.is_zero() {
                                sigma = sigma + &(vt.clone() * &a[t][i]);
                            }
                        }
                        if append_sign < 0 {
                            sigma = sigma.neg();
                        }
                        // the degree-1 basis word for letter i has index i
                        out[i] = out[i].clone() + &sigma;
                    } else {
                        for (w, vw) in v.iter().enumerate() {
                            if vw.is_zero() {
                                continue;
                            }
                            let expr = &degrees[j - 2].express[&(w, i)];
                            for (o, ex) in out.iter_mut().zip(expr.iter()) {
                                let t = vw.clone() * ex;
                                *o = std::mem::replace(o, S::zero()) + &t;
                            }
                        }
                    }
                    per_k.push(out);
                }
                pending.push(((b, i), per_k));
            }
        }
        for ((b, i), per_k) in pending {
            let mut fingerprint = Vec::with_capacity(r * prev_dim);
            for col in &per_k {
                fingerprint.extend(col.iter().cloned());
            }
            match elim.insert(fingerprint)? {
                DenseInsert::Independent => {
                    let idx = data.words.len();
                    data.words.push((b, i));
                    data.parity.push(degrees[j - 2].parity[b] ^ pgen[i]);
                    let mut w = degrees[j - 2].weight[b].clone();
                    for (k, wk) in w.iter_mut().enumerate() {
                        *wk = std::mem::replace(wk, S::zero()) + &a[k][i];
                    }
                    data.weight.push(w);
                    data.lowered.push(per_k);
                    let mut unit = vec![S::zero(); elim.basis_len()];
                    unit[idx] = S::one();
                    data.express.insert((b, i), unit);
                }
                DenseInsert::Dependent(combo) => {
                    data.express.insert((b, i), combo);
                }
            }
        }
        // pad earlier unit vectors to the final basis length
        let dim_j = data.words.len();
        for expr in data.express.values_mut() {
            expr.resize(dim_j, S::zero());
        }
        dims.push(dim_j);
        degrees.push(data);
        if dim_j == 0 {
            consecutive_empty += 1;
            if consecutive_empty >= 2 {
                stabilized = true;
                break;
            }
        } else {
            consecutive_empty = 0;
        }
    }
    // a single empty degree also proves stabilization (each degree is
    // spanned by extensions of the previous one), so count it
    if !stabilized && dims.last() == Some(&0) {
        stabilized = true;
    }

    // reconstruct letter sequences; dims and words are indexed by degree−1
    let mut words: Vec<Vec<Vec<usize>>> = Vec::new();
    for (jm1, data) in degrees.iter().enumerate() {
        let mut at_degree = Vec::new();
        for idx in 0..data.words.len() {
            let mut seq = Vec::new();
            let (mut dj, mut wi) = (jm1, idx);
            loop {
                let (prev, letter) = degrees[dj].words[wi];
                seq.push(letter);
                if dj == 0 {
                    break;
                }
                wi = prev;
                dj -= 1;
            }
            seq.reverse();
            at_degree.push(seq);
        }
        words.push(at_degree);
    }
    while dims.last() == Some(&0) {
        dims.pop();
        words.pop();
    }
    Ok(GradedBuild {
        rank: r,
        dims,
        stabilized,
        words,
    })
}

/// Positive half (raising-generator words).
pub fn build_graded<S: Scalar>(spec: &CartanSpec<S>, max_degree: usize) -> Result<GradedBuild> {
    build_graded_side(spec, max_degree, Side::Raising)
}

/// Negative half (lowering-generator words); per-degree dimensions must
/// mirror the positive half.
pub fn build_graded_mirror<S: Scalar>(
    spec: &CartanSpec<S>,
    max_degree: usize,
) -> Result<GradedBuild> {
    build_graded_side(spec, max_degree, Side::Lowering)
}

// ---------------------------------------------------------------------------
// Root systems and dual Coxeter numbers for the classical families
// ---------------------------------------------------------------------------

/// Root system in an orthogonal basis: coordinates split into `neps`
/// entries of square length +1 and the rest of square length −1.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub name: String,
    pub neps: usize,
    pub ndel: usize,
    pub even: Vec<Vec<Rat>>,
    pub odd: Vec<Vec<Rat>>,
    /// Highest root of the adjoint representation (lexicographic order).
    pub theta: Vec<Rat>,
}

impl RootSystem {
    pub fn form(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..self.neps + self.ndel {
            let t = &u[i] * &v[i];
            if i < self.neps {
                s += t;
            } else {
                s -= t;
            }
        }
        s
    }

    /// Positive roots: first nonzero coordinate positive.
    fn positive(roots: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        roots
            .iter()
            .filter(|r| {
                r.iter()
                    .find(|c| !c.is_zero())
                    .map(|c| *c > Rat::zero())
                    .unwrap_or(false)
            })
            .cloned()
            .collect()
    }

    /// Half the difference of the even and odd positive-root sums.
    pub fn rho(&self) -> Vec<Rat> {
        let dim = self.neps + self.ndel;
        let mut rho = vec![Rat::zero(); dim];
        for a in Self::positive(&self.even) {
            for (r, c) in rho.iter_mut().zip(a.iter()) {
                *r += c;
            }
        }
        for a in Self::positive(&self.odd) {
            for (r, c) in rho.iter_mut().zip(a.iter()) {
                *r -= c;
            }
        }
        for r in rho.iter_mut() {
            *r *= rat(1, 2);
        }
        rho
    }

    /// Dual Coxeter number: `½(θ + 2ρ | θ)` times the scale `2/(α*|α*)`
    /// where `α*` is the longest even root whose square length has the
    /// same sign as the raw value; zero raw value short-circuits to 0.
    pub fn dual_coxeter(&self) -> Rat {
        let rho = self.rho();
        let mut raw = self.form(&self.theta, &self.theta) * rat(1, 2);
        raw += self.form(&rho, &self.theta);
        if raw.is_zero() {
            return Rat::zero();
        }
        let positive_raw = raw > Rat::zero();
        let mut best: Option<Rat> = None;
        for a in &self.even {
            let n = self.form(a, a);
            if n.is_zero() || (n > Rat::zero()) != positive_raw {
                continue;
            }
            let abs = if n < Rat::zero() { -n.clone() } else { n.clone() };
            let better = match &best {
                None => true,
                Some(b) => {
                    let babs = if *b < Rat::zero() { -b.clone() } else { b.clone() };
                    abs > babs
                }
            };
            if better {
                best = Some(n);
            }
        }
        let norm = best.expect("nonzero raw value implies a comparable even root");
        raw * rat_int(2) / norm
    }
}

fn unit(dim: usize, i: usize, sign: i64) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = rat_int(sign);
    v
}

fn pair(dim: usize, i: usize, si: i64, j: usize, sj: i64) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = rat_int(si);
    v[j] += rat_int(sj);
    v
}

/// Root data of `sl(m|n)` (n = 0 allowed) or `spo(m|n)` (m even).
pub fn root_system(name: &str) -> Result<RootSystem> {
    let (family, m, n) = parse_family(name)?;
    match family {
        Family::Sl => {
            if m < 2 && n == 0 {
                return Err(Error::Precondition("sl needs m ≥ 2".into()));
            }
            let dim = m + n;
            let mut even = Vec::new();
            let mut odd = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        even.push(pair(dim, i, 1, j, -1));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        even.push(pair(dim, m + i, 1, m + j, -1));
                    }
                }
            }
            for i in 0..m {
                for j in 0..n {
                    odd.push(pair(dim, i, 1, m + j, -1));
                    odd.push(pair(dim, i, -1, m + j, 1));
                }
            }
            let theta = if n > 0 {
                pair(dim, 0, 1, m + n - 1, -1)
            } else {
                pair(dim, 0, 1, m - 1, -1)
            };
            Ok(RootSystem {
                name: name.into(),
                neps: m,
                ndel: n,
                even,
                odd,
                theta,
            })
        }
        Family::Spo => {
            if m % 2 != 0 || m == 0 {
                return Err(Error::Precondition(
                    "spo needs a positive even first argument".into(),
                ));
            }
            let k = m / 2;
            let l = n / 2;
            let dim = k + l;
            let mut even = Vec::new();
            let mut odd = Vec::new();
            for i in 0..k {
                even.push(unit(dim, i, 2));
                even.push(unit(dim, i, -2));
                for j in (i + 1)..k {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        even.push(pair(dim, i, si, j, sj));
                    }
                }
            }
            for i in 0..l {
                for j in (i + 1)..l {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        even.push(pair(dim, k + i, si, k + j, sj));
                    }
                }
                if n % 2 == 1 {
                    even.push(unit(dim, k + i, 1));
                    even.push(unit(dim, k + i, -1));
                }
            }
            for i in 0..k {
                for j in 0..l {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        odd.push(pair(dim, i, si, k + j, sj));
                    }
                }
                if n % 2 == 1 {
                    odd.push(unit(dim, i, 1));
                    odd.push(unit(dim, i, -1));
                }
            }
            let theta = unit(dim, 0, 2);
            Ok(RootSystem {
                name: name.into(),
                neps: k,
                ndel: l,
                even,
                odd,
                theta,
            })
        }
    }
}

enum Family {
    Sl,
    Spo,
}

/// Accepts `sl(m|n)`, `sl(k)`, `spo(m|n)`.
fn parse_family(name: &str) -> Result<(Family, usize, usize)> {
    let t = name.trim();
    let (fam, rest) = if let Some(r) = t.strip_prefix("sl(") {
        (Family::Sl, r)
    } else if let Some(r) = t.strip_prefix("spo(") {
        (Family::Spo, r)
    } else {
        return Err(Error::UnknownName(t.into()));
    };
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::UnknownName(t.into()))?;
    let (ms, ns) = match inner.split_once('|') {
        Some((a, b)) => (a, b),
        None => (inner, "0"),
    };
    let m: usize = ms.trim().parse().map_err(|_| Error::UnknownName(t.into()))?;
    let n: usize = ns.trim().parse().map_err(|_| Error::UnknownName(t.into()))?;
    Ok((fam, m, n))
}

/// Dual Coxeter number by name; classical familes from root data,
/// `F(4)` and `G(3)` as stored values.
pub fn dual_coxeter(name: &str) -> Result<Rat> {
    match name.trim() {
        "F(4)" => Ok(rat_int(3)),
        "G(3)" => Ok(rat_int(2)),
        other => Ok(root_system(other)?.dual_coxeter()),
    }
}

/// The rescale factor `2/(α*|α*)` applied to raw half-Casimir values for
/// this algebra (1 when the raw dual Coxeter number vanishes: no
/// normalization is defined there and callers only use the product).
pub fn form_scale(name: &str) -> Result<Rat> {
    let rs = root_system(name)?;
    let h = rs.dual_coxeter();
    if h.is_zero() {
        return Ok(Rat::one());
    }
    let rho = rs.rho();
    let mut raw = rs.form(&rs.theta, &rs.theta) * rat(1, 2);
    raw += rs.form(&rho, &rs.theta);
    Ok(h / raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims_of(name: &str) -> GradedBuild {
        let spec = registry(name).unwrap();
        build_graded(&spec, 24).unwrap()
    }

    #[test]
    fn split_rank_oracles() {
        // two- and three-dimensional split algebras against their matrix
        // realizations
        let b = dims_of("cartan_sl(2)");
        assert!(b.stabilized);
        assert_eq!(b.dims, vec![1]);
        assert_eq!(b.total(), Some(3));
        let b = dims_of("cartan_sl(3)");
        assert_eq!(b.dims, vec![2, 1]);
        assert_eq!(b.total(), Some(8));
        let b = dims_of("cartan_sl(4)");
        assert_eq!(b.total(), Some(15));
    }

    #[test]
    fn family_dimension_symbolic() {
        let b = dims_of("D_a");
        assert!(b.stabilized);
        assert_eq!(b.total(), Some(17));
        assert_eq!(b.dims, vec![3, 2, 1, 1]);
    }

    #[test]
    fn family_dimension_numeric() {
        let spec = registry("D_a").unwrap();
        for a0 in [rat_int(2), rat(1, 3), rat_int(5)] {
            let num = evaluate_parameter(&spec, &a0).unwrap();
            let b = build_graded(&num, 24).unwrap();
            assert_eq!(b.total(), Some(17), "a = {a0}");
        }
    }

    #[test]
    fn excluded_parameters() {
        let spec = registry("D_a").unwrap();
        assert!(evaluate_parameter(&spec, &rat_int(0)).is_err());
        assert!(evaluate_parameter(&spec, &rat_int(-1)).is_err());
        assert!(evaluate_parameter(&spec, &rat_int(2)).is_ok());
    }

    #[test]
    fn forty_and_thirtyone() {
        assert_eq!(dims_of("F").total(), Some(40));
        assert_eq!(dims_of("G").total(), Some(31));
    }

    #[test]
    fn mirror_symmetry() {
        for name in ["cartan_sl(3)", "G"] {
            let spec = registry(name).unwrap();
            let pos = build_graded(&spec, 24).unwrap();
            let neg = build_graded_mirror(&spec, 24).unwrap();
            assert_eq!(pos.dims, neg.dims, "{name}");
        }
        let spec = registry("D_a").unwrap();
        let num = evaluate_parameter(&spec, &rat_int(2)).unwrap();
        assert_eq!(
            build_graded(&num, 24).unwrap().dims,
            build_graded_mirror(&num, 24).unwrap().dims
        );
    }

    #[test]
    fn custom_matrix_parsing() {
        let spec = parse_cartan_matrix("0, -1, -a; -1, 2, 0; -1, 0, 2", &[1]).unwrap();
        assert_eq!(spec.rank(), 3);
        assert!(spec.odd[0] && !spec.odd[1]);
        let b = build_graded(&spec, 24).unwrap();
        assert_eq!(b.total(), Some(17));
        // entries with explicit coefficients on the parameter
        let e = parse_entry("2a").unwrap();
        assert_eq!(e.eval(&rat_int(3)).unwrap(), rat_int(6));
        let e = parse_entry("-3/2").unwrap();
        assert_eq!(e.eval(&rat_int(7)).unwrap(), rat(-3, 2));
    }

    #[test]
    fn basis_words_shape() {
        let b = dims_of("cartan_sl(3)");
        assert_eq!(b.words[0].len(), 2);
        assert_eq!(b.words[1], vec![vec![0, 1]]);
    }

    #[test]
    fn registry_errors() {
        assert!(registry("nosuch").is_err());
        assert!(registry("cartan_sl(1)").is_err());
        assert_eq!(inequivalent_pair_count("F"), Some(6));
    }

    #[test]
    fn dual_coxeter_values() {
        for (name, expect) in [
            ("sl(2)", rat_int(2)),
            ("sl(3)", rat_int(3)),
            ("sl(2|1)", rat_int(1)),
            ("sl(3|1)", rat_int(2)),
            ("sl(4|2)", rat_int(2)),
            ("spo(2|1)", rat(3, 2)),
            ("spo(2|3)", rat(1, 2)),
            ("spo(4|2)", rat_int(2)),
            ("spo(2|2)", rat_int(1)),
            ("spo(2|4)", rat_int(0)),
            ("F(4)", rat_int(3)),
            ("G(3)", rat_int(2)),
        ] {
            assert_eq!(dual_coxeter(name).unwrap(), expect, "{name}");
        }
    }

    #[test]
    fn sl_family_rule() {
        // |m − n| for 1 ≤ n < m ≤ 4
        for m in 1..=4usize {
            for n in 1..m {
                let name = format!("sl({m}|{n})");
                if m == n {
                    continue;
                }
                assert_eq!(
                    dual_coxeter(&name).unwrap(),
                    rat_int((m as i64 - n as i64).abs()),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn spo_family_rule() {
        // ½(m−n) + 1 on the tested window
        for (m, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (4, 2), (4, 1), (6, 2)] {
            let name = format!("spo({m}|{n})");
            let expect = rat(m as i64 - n as i64, 2) + rat_int(1);
            assert_eq!(dual_coxeter(&name).unwrap(), expect, "{name}");
        }
    }
}
