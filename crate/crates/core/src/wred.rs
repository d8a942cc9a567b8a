//! Quantum reduction invariants for small matrix superalgebras.
//!
//! A reductive superalgebra `g` with a non-degenerate invariant bilinear
//! form, a nilpotent even element `f`, and a level `k` determine a
//! W-algebra `W(g, f, k)`. This module computes the numerical surface of
//! that construction without building the vertex algebra itself:
//!
//! * six matrix models ([`algebra`]): `sl2`, `sl3`, `sl(2|1)`, `sl(2|2)`,
//!   `spo(2|1)`, `spo(2|3)`, stored as `(m+n)×(m+n)` matrices with block
//!   parity and the invariant form `(x|y) = c·str(xy)` normalized so the
//!   longest distinguished even root has square length 2;
//! * [`complete_triple`]: embeds `f` in an sl2-triple `{e, h, f}` with
//!   `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h` by exact linear solves, and
//!   records the eigenvalue decomposition of `ad h` ([`ReductionDatum`]);
//! * [`field_content`]: the conformal weights `1 + j` attached to the
//!   `ad h`-eigenvectors of eigenvalue `−2j` in the centralizer of `f`,
//!   split by parity — the free generating fields of `W(g, f, k)`;
//! * [`central_charge_symbolic`] / [`central_charge`]: the exact central
//!   charge
//!
//!   ```text
//!   c(k) = k·sdim g/(k+h∨) − 3(h|h)k − Σᵢ (−1)^{p(uᵢ)}(12mᵢ² − 12mᵢ + 2)
//!          − ½·sdim g₁
//!   ```
//!
//!   where `{uᵢ}` runs over a basis of the positive part `g₊ = ⊕_{j≥1} gⱼ`
//!   of the grading `gⱼ = {u : [h,u] = j·u}`, `mᵢ = j/2` on `gⱼ`, and `g₁`
//!   is the eigenvalue-1 subspace. The symbolic form lives in `ℚ(k)`;
//!   numeric evaluation rejects the pole `k = −h∨`.
//! * [`correspondence`]: the named superconformal algebra produced by the
//!   reduction at the even lowest root, with caveats where the match needs
//!   extra free fermions or bosons.
//!
//! For `sl2` with the principal nilpotent the central charge coincides with
//! the minimal-series value `c^{(p,p')}` at `p = u(k+2)`, `p' = u` for every
//! admissible level `k = v/u` — the cross-check is in the test suite against
//! [`crate::characters::minimal_series`].

use crate::cartanm;
use crate::error::{Error, Result};
use crate::linalg::{Elim, KernelBuilder, SparseVec};
use crate::rat::{fmt_rat, rat, rat_int, Rat};
use crate::ratfun::RatFun;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

// ---------------------------------------------------------------------------
// Dense rational matrices
// ---------------------------------------------------------------------------

/// Dense square matrix over the exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<Rat>,
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        Mat {
            n,
            a: vec![Rat::zero(); n * n],
        }
    }

    /// The matrix unit `E_{ij}` (indices 0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(n);
        m.a[i * n + j] = Rat::one();
        m
    }

    /// `Σ c·E_{ij}` from integer-coefficient parts.
    pub fn combo(n: usize, parts: &[(i64, usize, usize)]) -> Mat {
        let mut m = Mat::zero(n);
        for &(c, i, j) in parts {
            m.a[i * n + j] += rat_int(c);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        self.a
            .iter()
            .enumerate()
            .all(|(k, c)| k / self.n == k % self.n || c.is_zero())
    }

    pub fn scaled(&self, c: &Rat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &Mat, c: &Rat) {
        for (x, y) in self.a.iter_mut().zip(other.a.iter()) {
            *x += y * c;
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for l in 0..n {
                let c = self.get(i, l);
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = c * other.get(l, j);
                    out.a[i * n + j] += t;
                }
            }
        }
        out
    }

    /// Whether some power up to `n` vanishes.
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 0..self.n {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    fn sparse(&self) -> SparseVec<usize> {
        self.a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// The stored algebra models
// ---------------------------------------------------------------------------

/// A basic superalgebra realized by `(m+n)×(m+n)` matrices: the first
/// `size_even` rows/columns are even, the rest odd. The invariant form is
/// `form_factor · str(xy)`; `form_factor` is the recorded normalization
/// constant making the longest distinguished even root have square length 2.
#[derive(Debug, Clone)]
pub struct MatrixSuperalgebra {
    pub name: String,
    pub size_even: usize,
    pub size_odd: usize,
    pub basis: Vec<Mat>,
    pub parity: Vec<bool>,
    pub form_factor: Rat,
    pub h_dual: Rat,
}

impl MatrixSuperalgebra {
    pub fn size(&self) -> usize {
        self.size_even + self.size_odd
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Superdimension: even basis count minus odd basis count.
    pub fn sdim(&self) -> i64 {
        let odd = self.parity.iter().filter(|p| **p).count();
        (self.dim() - odd) as i64 - odd as i64
    }

    /// `Σ_{i even} x_{ii} − Σ_{i odd} x_{ii}`.
    pub fn supertrace(&self, x: &Mat) -> Rat {
        let mut s = Rat::zero();
        for i in 0..self.size() {
            if i < self.size_even {
                s += x.get(i, i);
            } else {
                s -= x.get(i, i);
            }
        }
        s
    }

    /// The normalized invariant form `(x|y) = form_factor · str(xy)`.
    pub fn form(&self, x: &Mat, y: &Mat) -> Rat {
        self.supertrace(&x.mul(y)) * &self.form_factor
    }

    /// Block parity of a matrix: `false` even, `true` odd; zero counts as
    /// even. Errors when the support meets both kinds of block.
    pub fn parity_of(&self, x: &Mat) -> Result<bool> {
        let se = self.size_even;
        let n = x.n;
        let mut seen = [false, false];
        for (k, c) in x.a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let odd = (k / n < se) != (k % n < se);
            seen[odd as usize] = true;
        }
        match seen {
            [true, true] => Err(Error::NotHomogeneous(
                "matrix mixes even and odd blocks".into(),
            )),
            [_, odd_only] => Ok(odd_only),
        }
    }

    fn bracket_p(x: &Mat, y: &Mat, px: bool, py: bool) -> Mat {
        let mut out = x.mul(y);
        let sign = if px && py { Rat::one() } else { -Rat::one() };
        out.add_scaled(&y.mul(x), &sign);
        out
    }

    /// `[x, y] = xy − (−1)^{p(x)p(y)} yx` for block-homogeneous arguments.
    pub fn bracket(&self, x: &Mat, y: &Mat) -> Result<Mat> {
        let px = self.parity_of(x)?;
        let py = self.parity_of(y)?;
        Ok(Self::bracket_p(x, y, px, py))
    }

    fn span_elim(&self) -> Elim<usize> {
        let mut el = Elim::new();
        for b in &self.basis {
            el.insert(b.sparse());
        }
        el
    }

    /// Coordinates of `x` over the stored basis, if `x` lies in the span.
    pub fn coordinates(&self, x: &Mat) -> Option<Vec<Rat>> {
        let comb = self.span_elim().express(x.sparse())?;
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, c) in comb {
            out[i] = c;
        }
        Some(out)
    }

    fn indices_of_parity(&self, odd: bool) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == odd).collect()
    }
}

/// The six stored model names, in canonical spelling.
pub fn algebra_ids() -> [&'static str; 6] {
    ["sl2", "sl3", "sl(2|1)", "sl(2|2)", "spo(2|1)", "spo(2|3)"]
}

/// Canonical spelling of an algebra id (`sl(2)` → `sl2` etc.).
fn canonical_name(name: &str) -> Result<&'static str> {
    match name.trim() {
        "sl2" | "sl(2)" => Ok("sl2"),
        "sl3" | "sl(3)" => Ok("sl3"),
        "sl(2|1)" => Ok("sl(2|1)"),
        "sl(2|2)" => Ok("sl(2|2)"),
        "spo(2|1)" => Ok("spo(2|1)"),
        "spo(2|3)" => Ok("spo(2|3)"),
        other => Err(Error::UnknownName(format!("matrix model {other}"))),
    }
}

/// Root-data spelling used by the contragredient module.
fn root_data_name(canonical: &str) -> &'static str {
    match canonical {
        "sl2" => "sl(2)",
        "sl3" => "sl(3)",
        "sl(2|1)" => "sl(2|1)",
        "sl(2|2)" => "sl(2|2)",
        "spo(2|1)" => "spo(2|1)",
        _ => "spo(2|3)",
    }
}

/// Supertraceless matrices on `ℂ^{m|n}`: all off-diagonal units plus the
/// supertraceless differences of consecutive diagonal units.
fn sl_model(name: &str, m: usize, n: usize) -> MatrixSuperalgebra {
    let sz = m + n;
    let mut basis = Vec::new();
    let mut parity = Vec::new();
    for i in 0..sz {
        for j in 0..sz {
            if i != j {
                basis.push(Mat::unit(sz, i, j));
                parity.push((i < m) != (j < m));
            }
        }
    }
    for i in 0..sz - 1 {
        // str(E_ii ± E_{i+1,i+1}) = 0: minus inside a block, plus across.
        let s = if (i < m) == (i + 1 < m) { -1 } else { 1 };
        basis.push(Mat::combo(sz, &[(1, i, i), (s, i + 1, i + 1)]));
        parity.push(false);
    }
    MatrixSuperalgebra {
        name: name.into(),
        size_even: m,
        size_odd: n,
        basis,
        parity,
        form_factor: Rat::one(),
        h_dual: cartanm::dual_coxeter(root_data_name(name)).expect("stored family"),
    }
}

/// Matrices preserving a form that is symplectic on `ℂ²` (even) and
/// orthogonal on `ℂ^q` (odd): `sp(2) ⊕ so(q)` in the diagonal blocks plus
/// `2q` odd elements `E_{0,2+i} + E_{2+i,1}` and `E_{1,2+i} − E_{2+i,0}`.
fn spo_model(name: &str, q: usize) -> MatrixSuperalgebra {
    let sz = 2 + q;
    let mut basis = Vec::new();
    let mut parity = Vec::new();
    // sp(2) on the even pair
    basis.push(Mat::unit(sz, 0, 1));
    basis.push(Mat::unit(sz, 1, 0));
    basis.push(Mat::combo(sz, &[(1, 0, 0), (-1, 1, 1)]));
    parity.extend([false, false, false]);
    // so(q) on the odd block
    for i in 0..q {
        for j in i + 1..q {
            basis.push(Mat::combo(sz, &[(1, 2 + i, 2 + j), (-1, 2 + j, 2 + i)]));
            parity.push(false);
        }
    }
    // odd part: two elements per orthogonal direction
    for i in 0..q {
        basis.push(Mat::combo(sz, &[(1, 0, 2 + i), (1, 2 + i, 1)]));
        parity.push(true);
        basis.push(Mat::combo(sz, &[(1, 1, 2 + i), (-1, 2 + i, 0)]));
        parity.push(true);
    }
    MatrixSuperalgebra {
        name: name.into(),
        size_even: 2,
        size_odd: q,
        basis,
        parity,
        form_factor: Rat::one(),
        h_dual: cartanm::dual_coxeter(root_data_name(name)).expect("stored family"),
    }
}

/// One of the six stored matrix models by name.
pub fn algebra(name: &str) -> Result<MatrixSuperalgebra> {
    let canon = canonical_name(name)?;
    Ok(match canon {
        "sl2" => sl_model(canon, 2, 0),
        "sl3" => sl_model(canon, 3, 0),
        "sl(2|1)" => sl_model(canon, 2, 1),
        "sl(2|2)" => sl_model(canon, 2, 2),
        "spo(2|1)" => spo_model(canon, 1),
        _ => spo_model(canon, 3),
    })
}

/// A stored nilpotent by designator: `lowest-root` is the lowest root
/// vector of the first even simple component (the 2×2 block), `principal`
/// the sum of the simple lowering operators (stored for `sl2` and `sl3`).
pub fn nilpotent_element(alg: &MatrixSuperalgebra, which: &str) -> Result<Mat> {
    let sz = alg.size();
    match which.trim() {
        "lowest-root" => Ok(Mat::unit(sz, 1, 0)),
        "principal" => match alg.name.as_str() {
            "sl2" => Ok(Mat::unit(sz, 1, 0)),
            "sl3" => Ok(Mat::combo(sz, &[(1, 1, 0), (1, 2, 1)])),
            other => Err(Error::Precondition(format!(
                "no stored principal nilpotent for {other}"
            ))),
        },
        other => Err(Error::UnknownName(format!("nilpotent designator {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Triple completion and grading data
// ---------------------------------------------------------------------------

/// An sl2-triple through `f` together with the `ad h` grading data that the
/// central-charge formula consumes.
#[derive(Debug, Clone)]
pub struct ReductionDatum {
    pub algebra: MatrixSuperalgebra,
    pub f: Mat,
    pub h: Mat,
    pub e: Mat,
    /// `(2m, parity)` per basis vector of the positive part `g₊`: the `ad h`
    /// eigenvalue `2m ≥ 1` with multiplicity, odd entries flagged.
    pub grading: Vec<(Rat, bool)>,
    pub sdim: i64,
    /// Superdimension of the eigenvalue-1 subspace `g₁`.
    pub sdim_g1: i64,
    /// `(h|h)` in the normalized form.
    pub h_norm: Rat,
    pub h_dual: Rat,
}

/// Solve `Σ xᵢ·op(bᵢ) = target` in the span of `images`; returns the
/// coefficient vector over the offered list.
fn solve_in_span(images: &[SparseVec<usize>], target: SparseVec<usize>) -> Option<Vec<Rat>> {
    let mut el = Elim::new();
    for img in images {
        el.insert(img.clone());
    }
    let comb = el.express(target)?;
    let mut out = vec![Rat::zero(); images.len()];
    for (i, c) in comb {
        out[i] = c;
    }
    Some(out)
}

/// Kernel of a linear map restricted to the span of `dom`, returned as
/// materialized matrices.
fn kernel_basis(dom: &[Mat], op: impl Fn(&Mat) -> Mat) -> Vec<Mat> {
    let mut kb = KernelBuilder::new();
    for d in dom {
        kb.offer(op(d).sparse());
    }
    kb.into_kernel()
        .into_iter()
        .map(|combo| {
            let mut m = Mat::zero(dom[0].n);
            for (j, c) in combo {
                m.add_scaled(&dom[j], &c);
            }
            m
        })
        .collect()
}

/// Dimension of the eigenvalue-`lam` subspace of `ad h` on the span of `dom`.
fn eigen_dim(dom: &[Mat], h: &Mat, lam: &Rat) -> usize {
    let mut kb = KernelBuilder::new();
    for d in dom {
        let mut img = MatrixSuperalgebra::bracket_p(h, d, false, false);
        img.add_scaled(d, &-lam.clone());
        kb.offer(img.sparse());
    }
    kb.kernel().len()
}

/// Embed a nilpotent even `f` in an sl2-triple and collect the grading data.
///
/// The grading element is found by solving `[h, f] = −2f` over the diagonal
/// part of the stored basis (falling back to a joint solve that also adjusts
/// by the even centralizer of `f`), `e` by solving `[e, f] = h`, corrected
/// into the eigenvalue-2 subspace of `ad h` when necessary. All three
/// defining relations are re-verified exactly before returning.
pub fn complete_triple(alg: &MatrixSuperalgebra, f: &Mat) -> Result<ReductionDatum> {
    if f.n != alg.size() {
        return Err(Error::ShapeMismatch(
            alg.name.clone(),
            format!("{}×{} matrix", f.n, f.n),
        ));
    }
    if f.is_zero() {
        return Err(Error::NotCompletable("f = 0 admits no grading element".into()));
    }
    if alg.parity_of(f)? {
        return Err(Error::Precondition("f must be even".into()));
    }
    if alg.coordinates(f).is_none() {
        return Err(Error::Precondition(format!(
            "f is not in the stored span of {}",
            alg.name
        )));
    }
    if !f.is_nilpotent() {
        return Err(Error::Precondition("f is not nilpotent".into()));
    }

    let even_idx = alg.indices_of_parity(false);
    let even_basis: Vec<&Mat> = even_idx.iter().map(|&i| &alg.basis[i]).collect();
    let minus2f = f.scaled(&rat_int(-2)).sparse();
    let ad_f = |x: &Mat| MatrixSuperalgebra::bracket_p(x, f, false, false);

    // Grading element: prefer a diagonal solution of [h, f] = −2f.
    let diag: Vec<&Mat> = even_basis
        .iter()
        .filter(|b| b.is_diagonal())
        .copied()
        .collect();
    let diag_images: Vec<SparseVec<usize>> = diag.iter().map(|b| ad_f(b).sparse()).collect();
    let mut h = match solve_in_span(&diag_images, minus2f.clone()) {
        Some(coef) => {
            let mut h0 = Mat::zero(f.n);
            for (c, b) in coef.iter().zip(diag.iter()) {
                h0.add_scaled(b, c);
            }
            h0
        }
        None => {
            let images: Vec<SparseVec<usize>> =
                even_basis.iter().map(|b| ad_f(b).sparse()).collect();
            let coef = solve_in_span(&images, minus2f).ok_or_else(|| {
                Error::NotCompletable("no grading element solves [h, f] = -2f".into())
            })?;
            let mut h0 = Mat::zero(f.n);
            for (c, b) in coef.iter().zip(even_basis.iter()) {
                h0.add_scaled(b, c);
            }
            h0
        }
    };

    // e from [e, f] = h, adjusting h by the even centralizer when h is not
    // yet in the image of ad f.
    let even_mats: Vec<Mat> = even_basis.iter().map(|b| (*b).clone()).collect();
    let images: Vec<SparseVec<usize>> = even_mats.iter().map(|b| ad_f(b).sparse()).collect();
    let mut e = match solve_in_span(&images, h.sparse()) {
        Some(coef) => {
            let mut e0 = Mat::zero(f.n);
            for (c, b) in coef.iter().zip(even_mats.iter()) {
                e0.add_scaled(b, c);
            }
            e0
        }
        None => {
            let cent = kernel_basis(&even_mats, |x| ad_f(x));
            let mut joint = images.clone();
            for z in &cent {
                joint.push(z.scaled(&-Rat::one()).sparse());
            }
            let coef = solve_in_span(&joint, h.sparse()).ok_or_else(|| {
                Error::NotCompletable("h is not in the image of ad f".into())
            })?;
            let mut e0 = Mat::zero(f.n);
            for (c, b) in coef[..even_mats.len()].iter().zip(even_mats.iter()) {
                e0.add_scaled(b, c);
            }
            for (c, z) in coef[even_mats.len()..].iter().zip(cent.iter()) {
                h.add_scaled(z, c);
            }
            e0
        }
    };

    // Project e into the eigenvalue-2 subspace of ad h if needed.
    let ad_h = |x: &Mat| MatrixSuperalgebra::bracket_p(&h, x, false, false);
    if ad_h(&e) != e.scaled(&rat_int(2)) {
        let two_space = kernel_basis(&even_mats, |x| {
            let mut img = ad_h(x);
            img.add_scaled(x, &rat_int(-2));
            img
        });
        if two_space.is_empty() {
            return Err(Error::NotCompletable(
                "ad h has no eigenvalue-2 vectors to carry e".into(),
            ));
        }
        let imgs: Vec<SparseVec<usize>> = two_space.iter().map(|b| ad_f(b).sparse()).collect();
        let coef = solve_in_span(&imgs, h.sparse()).ok_or_else(|| {
            Error::NotCompletable("no e in the eigenvalue-2 subspace solves [e, f] = h".into())
        })?;
        e = Mat::zero(f.n);
        for (c, b) in coef.iter().zip(two_space.iter()) {
            e.add_scaled(b, c);
        }
    }

    // Exact verification of the three defining relations.
    if ad_h(&e) != e.scaled(&rat_int(2))
        || ad_h(f) != f.scaled(&rat_int(-2))
        || MatrixSuperalgebra::bracket_p(&e, f, false, false) != h
    {
        return Err(Error::NotCompletable(
            "candidate (e, h) fails the triple relations".into(),
        ));
    }

    if !h.is_diagonal() {
        return Err(Error::NotCompletable(
            "grading element is not diagonal in the stored model".into(),
        ));
    }

    // Eigen-decomposition of ad h over the stored basis, split by parity.
    let mut lams = BTreeSet::new();
    for i in 0..f.n {
        for j in 0..f.n {
            lams.insert(h.get(i, i) - h.get(j, j));
        }
    }
    let odd_idx = alg.indices_of_parity(true);
    let odd_mats: Vec<Mat> = odd_idx.iter().map(|&i| alg.basis[i].clone()).collect();
    let mut grading = Vec::new();
    let mut seen_even = 0usize;
    let mut seen_odd = 0usize;
    let mut sdim_g1 = 0i64;
    for lam in &lams {
        let ne = eigen_dim(&even_mats, &h, lam);
        let no = eigen_dim(&odd_mats, &h, lam);
        seen_even += ne;
        seen_odd += no;
        if *lam == Rat::one() {
            sdim_g1 = ne as i64 - no as i64;
        }
        if *lam > Rat::zero() {
            grading.extend(std::iter::repeat((lam.clone(), false)).take(ne));
            grading.extend(std::iter::repeat((lam.clone(), true)).take(no));
        }
    }
    if seen_even != even_mats.len() || seen_odd != odd_mats.len() {
        return Err(Error::NotCompletable(
            "ad h is not diagonalizable on the stored basis".into(),
        ));
    }
    grading.sort();

    let h_norm = alg.form(&h, &h);
    Ok(ReductionDatum {
        algebra: alg.clone(),
        f: f.clone(),
        h,
        e,
        grading,
        sdim: alg.sdim(),
        sdim_g1,
        h_norm,
        h_dual: alg.h_dual.clone(),
    })
}

// ---------------------------------------------------------------------------
// Field content
// ---------------------------------------------------------------------------

/// Conformal weights of the generating fields of `W(g, f, k)`: one field of
/// weight `1 + j` for each `ad h` eigenvector of eigenvalue `−2j` in the
/// centralizer of `f`, split by parity. Sorted by descending weight, even
/// entries before odd at equal weight.
pub fn field_content(datum: &ReductionDatum) -> Result<Vec<(Rat, bool)>> {
    let alg = &datum.algebra;
    let ad_f = |x: &Mat, p: bool| MatrixSuperalgebra::bracket_p(&datum.f, x, false, p);
    let mut out = Vec::new();
    let mut lams = BTreeSet::new();
    for i in 0..datum.f.n {
        for j in 0..datum.f.n {
            lams.insert(datum.h.get(i, i) - datum.h.get(j, j));
        }
    }
    for odd in [false, true] {
        let idx = alg.indices_of_parity(odd);
        let mats: Vec<Mat> = idx.iter().map(|&i| alg.basis[i].clone()).collect();
        if mats.is_empty() {
            continue;
        }
        let cent = kernel_basis(&mats, |x| ad_f(x, odd));
        if cent.is_empty() {
            continue;
        }
        let mut total = 0usize;
        for lam in &lams {
            let d = eigen_dim(&cent, &datum.h, lam);
            total += d;
            // eigenvalue −2j ⇒ weight 1 + j = 1 − lam/2
            let weight = Rat::one() - lam / rat_int(2);
            out.extend(std::iter::repeat((weight, odd)).take(d));
        }
        if total != cent.len() {
            return Err(Error::Precondition(
                "ad h is not diagonalizable on the centralizer of f".into(),
            ));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Central charge
// ---------------------------------------------------------------------------

/// `12m² − 12m + 2` expressed in the stored eigenvalue `2m`.
fn weight_term(two_m: &Rat) -> Rat {
    rat_int(3) * two_m * two_m - rat_int(6) * two_m + rat_int(2)
}

/// The central charge of the reduced algebra as an element of `ℚ(k)`:
///
/// ```text
/// c(k) = k·sdim g/(k + h∨) − 3(h|h)·k
///        − Σ_{uᵢ ∈ g₊} (−1)^{p(uᵢ)}(12mᵢ² − 12mᵢ + 2) − ½·sdim g₁
/// ```
pub fn central_charge_symbolic(datum: &ReductionDatum) -> RatFun {
    let k = RatFun::var();
    let t1 = &(&k * &RatFun::constant(rat_int(datum.sdim)))
        / &(&k + &RatFun::constant(datum.h_dual.clone()));
    let t2 = &k * &RatFun::constant(rat_int(3) * &datum.h_norm);
    let mut s = Rat::zero();
    for (two_m, odd) in &datum.grading {
        let term = weight_term(two_m);
        if *odd {
            s -= term;
        } else {
            s += term;
        }
    }
    s += rat(1, 2) * rat_int(datum.sdim_g1);
    &(&t1 - &t2) - &RatFun::constant(s)
}

/// Exact numeric central charge; `k = −h∨` is rejected as a pole even when
/// the symbolic expression happens to cancel it.
pub fn central_charge(datum: &ReductionDatum, k: &Rat) -> Result<Rat> {
    if k + &datum.h_dual == Rat::zero() {
        return Err(Error::Pole(format!(
            "central charge of {} at k = {}",
            datum.algebra.name,
            fmt_rat(k)
        )));
    }
    central_charge_symbolic(datum).eval(k)
}

// ---------------------------------------------------------------------------
// The superconformal correspondence table
// ---------------------------------------------------------------------------

/// Entry of the reduction ↔ superconformal-algebra table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    /// Name of the superconformal algebra the reduction produces.
    pub superconformal: String,
    /// Extra free fields needed for an exact isomorphism, when any.
    pub caveat: Option<String>,
    /// Whether a matrix model for the source algebra is stored here.
    pub has_matrix_model: bool,
}

/// The stored table of reductions at the even lowest root vector.
pub fn correspondence(algebra_name: &str, f_designator: &str) -> Result<Correspondence> {
    if f_designator.trim() != "lowest-root" {
        return Err(Error::Precondition(format!(
            "correspondence is tabulated for the lowest root only, not {f_designator}"
        )));
    }
    let entry = |name: &str, caveat: Option<&str>, model: bool| Correspondence {
        superconformal: name.into(),
        caveat: caveat.map(|c| c.into()),
        has_matrix_model: model,
    };
    match algebra_name.trim() {
        "spo(2|1)" => Ok(entry("Neveu-Schwarz", None, true)),
        "sl(2|1)" => Ok(entry("N=2", None, true)),
        "sl(2|2)" => Ok(entry("N=4", None, true)),
        "spo(2|3)" => Ok(entry("N=3", Some("after adding one fermion"), true)),
        "D(2,1;a)" => Ok(entry(
            "big N=4",
            Some("after adding four fermions and one boson"),
            false,
        )),
        "sl3" | "sl(3)" => Ok(entry("quasi-superconformal", None, true)),
        other => Err(Error::UnknownName(format!(
            "no tabulated superconformal correspondence for {other}"
        ))),
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters;
    use crate::ratfun::Poly1;

    fn datum(name: &str, which: &str) -> ReductionDatum {
        let alg = algebra(name).unwrap();
        let f = nilpotent_element(&alg, which).unwrap();
        complete_triple(&alg, &f).unwrap()
    }

    fn ratfun(num: &[i64], den: &[i64]) -> RatFun {
        let p = |cs: &[i64]| Poly1::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect());
        RatFun::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn models_close_and_the_form_is_invariant() {
        let expected = [
            ("sl2", 3usize, 3i64),
            ("sl3", 8, 8),
            ("sl(2|1)", 8, 0),
            ("sl(2|2)", 15, -1),
            ("spo(2|1)", 5, 1),
            ("spo(2|3)", 12, 0),
        ];
        for (name, dim, sdim) in expected {
            let alg = algebra(name).unwrap();
            assert_eq!(alg.dim(), dim, "{name} dimension");
            assert_eq!(alg.sdim(), sdim, "{name} superdimension");
            // basis is independent, parity-homogeneous, supertraceless
            assert_eq!(alg.span_elim().rank(), dim, "{name} independence");
            for (b, p) in alg.basis.iter().zip(alg.parity.iter()) {
                assert_eq!(alg.parity_of(b).unwrap(), *p, "{name} parity tag");
                assert!(alg.supertrace(b).is_zero(), "{name} supertraceless");
            }
            // closure under the bracket
            let el = alg.span_elim();
            let mut table = Vec::new();
            for i in 0..dim {
                let mut row = Vec::new();
                for j in 0..dim {
                    let br = MatrixSuperalgebra::bracket_p(
                        &alg.basis[i],
                        &alg.basis[j],
                        alg.parity[i],
                        alg.parity[j],
                    );
                    assert!(
                        el.contains(br.sparse()),
                        "{name}: [b{i}, b{j}] leaves the span"
                    );
                    row.push(br);
                }
                table.push(row);
            }
            // invariance (a|[b,c]) = ([a,b]|c) on all basis triples
            for i in 0..dim {
                for j in 0..dim {
                    for l in 0..dim {
                        let lhs = alg.form(&alg.basis[i], &table[j][l]);
                        let rhs = alg.form(&table[i][j], &alg.basis[l]);
                        assert_eq!(lhs, rhs, "{name}: invariance at ({i},{j},{l})");
                    }
                }
            }
        }
    }

    #[test]
    fn form_normalization_and_dual_coxeter_numbers() {
        // Longest distinguished even root per model: the root as a
        // functional on diagonal matrices, and its dual element inside the
        // algebra's Cartan (for the symplectic block, 2ε₁ dualizes to
        // diag(1, −1) because the Cartan there is constrained to ±t pairs).
        type Diag = Vec<(i64, usize)>;
        let cases: [(&str, Diag, Diag, Rat); 6] = [
            ("sl2", vec![(1, 0), (-1, 1)], vec![(1, 0), (-1, 1)], rat_int(2)),
            ("sl3", vec![(1, 0), (-1, 2)], vec![(1, 0), (-1, 2)], rat_int(3)),
            ("sl(2|1)", vec![(1, 0), (-1, 1)], vec![(1, 0), (-1, 1)], rat_int(1)),
            ("sl(2|2)", vec![(1, 0), (-1, 1)], vec![(1, 0), (-1, 1)], rat_int(0)),
            ("spo(2|1)", vec![(2, 0)], vec![(1, 0), (-1, 1)], rat(3, 2)),
            ("spo(2|3)", vec![(2, 0)], vec![(1, 0), (-1, 1)], rat(1, 2)),
        ];
        for (name, theta, dual, hd) in cases {
            let alg = algebra(name).unwrap();
            assert_eq!(alg.form_factor, Rat::one(), "{name} recorded constant");
            assert_eq!(alg.h_dual, hd, "{name} dual Coxeter number");
            let n = alg.size();
            let mut h_theta = Mat::zero(n);
            let theta_of = |x: &Mat| -> Rat {
                let mut s = Rat::zero();
                for &(c, i) in &theta {
                    s += rat_int(c) * x.get(i, i);
                }
                s
            };
            for &(c, i) in &dual {
                h_theta.a[i * n + i] = rat_int(c);
            }
            for b in alg.basis.iter().filter(|b| b.is_diagonal()) {
                assert_eq!(alg.form(&h_theta, b), theta_of(b), "{name} duality");
            }
            assert_eq!(alg.form(&h_theta, &h_theta), rat_int(2), "{name} (θ|θ) = 2");
        }
    }

    #[test]
    fn triple_completion_and_gradings() {
        // sl2: the defining triple
        let d = datum("sl2", "lowest-root");
        assert_eq!(d.h, Mat::combo(2, &[(1, 0, 0), (-1, 1, 1)]));
        assert_eq!(d.e, Mat::unit(2, 0, 1));
        assert_eq!(d.grading, vec![(rat_int(2), false)]);
        assert_eq!((d.sdim, d.sdim_g1), (3, 0));
        assert_eq!(d.h_norm, rat_int(2));

        // expected positive-part gradings (2m, parity) for the lowest root
        let expected: [(&str, Vec<(i64, bool)>); 5] = [
            ("sl3", vec![(1, false), (1, false), (2, false)]),
            ("sl(2|1)", vec![(1, true), (1, true), (2, false)]),
            (
                "sl(2|2)",
                vec![(1, true), (1, true), (1, true), (1, true), (2, false)],
            ),
            ("spo(2|1)", vec![(1, true), (2, false)]),
            ("spo(2|3)", vec![(1, true), (1, true), (1, true), (2, false)]),
        ];
        for (name, grades) in expected {
            let d = datum(name, "lowest-root");
            let want: Vec<(Rat, bool)> =
                grades.iter().map(|&(m, p)| (rat_int(m), p)).collect();
            assert_eq!(d.grading, want, "{name} grading");
            // defining relations, re-checked from the returned data
            let alg = &d.algebra;
            assert_eq!(alg.bracket(&d.h, &d.e).unwrap(), d.e.scaled(&rat_int(2)));
            assert_eq!(alg.bracket(&d.h, &d.f).unwrap(), d.f.scaled(&rat_int(-2)));
            assert_eq!(alg.bracket(&d.e, &d.f).unwrap(), d.h);
            assert_eq!(d.h_norm, rat_int(2), "{name} (h|h)");
        }
        // the two-dimensional odd level-one piece of sl(2|1)
        let d = datum("sl(2|1)", "lowest-root");
        assert_eq!(d.sdim_g1, -2);

        // principal sl3: h = diag(2, 0, −2), e = 2E01 + 2E12, m ∈ {1, 1, 2}
        let d = datum("sl3", "principal");
        assert_eq!(d.h, Mat::combo(3, &[(2, 0, 0), (-2, 2, 2)]));
        assert_eq!(
            d.e,
            Mat::combo(3, &[(2, 0, 1), (2, 1, 2)])
        );
        assert_eq!(
            d.grading,
            vec![(rat_int(2), false), (rat_int(2), false), (rat_int(4), false)]
        );
        assert_eq!(d.h_norm, rat_int(8));
    }

    #[test]
    fn grading_trace_and_basis_independence() {
        for name in algebra_ids() {
            let d = datum(name, "lowest-root");
            // trace of ad h on all of g vanishes; the positive part carries
            // half of the total absolute weight
            let alg = &d.algebra;
            let mut trace = Rat::zero();
            let mut positive: Rat = d.grading.iter().map(|(m, _)| m).sum();
            for (i, b) in alg.basis.iter().enumerate() {
                let img = MatrixSuperalgebra::bracket_p(&d.h, b, false, alg.parity[i]);
                if let Some(coords) = alg.coordinates(&img) {
                    trace += &coords[i];
                    positive -= coords[i].clone().max(Rat::zero());
                } else {
                    panic!("{name}: ad h leaves the span");
                }
            }
            assert!(trace.is_zero(), "{name}: tr ad h ≠ 0");
            // Σ 2m over the grading equals tr(ad h) restricted to g₊; the
            // basis diagonal entries above capture exactly that trace when
            // the basis is eigenaligned, and the eigen decomposition makes
            // the comparison basis independent.
            assert!(positive.is_zero(), "{name}: positive trace mismatch");
        }

        // shuffling the stored basis changes nothing observable
        let mut alg = algebra("sl(2|1)").unwrap();
        let f = nilpotent_element(&alg, "lowest-root").unwrap();
        let before = complete_triple(&alg, &f).unwrap();
        alg.basis.rotate_left(3);
        alg.parity.rotate_left(3);
        let after = complete_triple(&alg, &f).unwrap();
        assert_eq!(before.grading, after.grading);
        assert_eq!(before.sdim_g1, after.sdim_g1);
        assert_eq!(
            central_charge_symbolic(&before),
            central_charge_symbolic(&after)
        );
        assert_eq!(
            field_content(&before).unwrap(),
            field_content(&after).unwrap()
        );
    }

    #[test]
    fn completion_rejects_bad_inputs() {
        let alg = algebra("sl2").unwrap();
        let zero = Mat::zero(2);
        assert!(matches!(
            complete_triple(&alg, &zero),
            Err(Error::NotCompletable(_))
        ));
        // a semisimple element is not nilpotent
        let h = Mat::combo(2, &[(1, 0, 0), (-1, 1, 1)]);
        assert!(matches!(
            complete_triple(&alg, &h),
            Err(Error::Precondition(_))
        ));
        // not supertraceless ⇒ outside the span
        let outside = Mat::unit(2, 0, 0);
        assert!(matches!(
            complete_triple(&alg, &outside),
            Err(Error::Precondition(_))
        ));
        // odd element rejected
        let alg21 = algebra("sl(2|1)").unwrap();
        let odd = Mat::unit(3, 2, 0);
        assert!(matches!(
            complete_triple(&alg21, &odd),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn field_contents_match_the_superconformal_generators() {
        let fc = |name: &str, which: &str| field_content(&datum(name, which)).unwrap();
        let w = |n: i64, d: i64, p: bool| (rat(n, d), p);

        assert_eq!(fc("sl2", "principal"), vec![w(2, 1, false)]);
        assert_eq!(
            fc("spo(2|1)", "lowest-root"),
            vec![w(2, 1, false), w(3, 2, true)]
        );
        assert_eq!(
            fc("sl(2|1)", "lowest-root"),
            vec![w(2, 1, false), w(3, 2, true), w(3, 2, true), w(1, 1, false)]
        );
        // N=3 needs one more fermion: three currents and three weight-3/2
        // odd fields appear, the weight-1/2 fermion does not
        assert_eq!(
            fc("spo(2|3)", "lowest-root"),
            vec![
                w(2, 1, false),
                w(3, 2, true),
                w(3, 2, true),
                w(3, 2, true),
                w(1, 1, false),
                w(1, 1, false),
                w(1, 1, false),
            ]
        );
        // quasi-superconformal: the weight-3/2 fields are even
        assert_eq!(
            fc("sl3", "lowest-root"),
            vec![w(2, 1, false), w(3, 2, false), w(3, 2, false), w(1, 1, false)]
        );
        // count = dim of the centralizer of f (rank–nullity on ad f)
        for name in algebra_ids() {
            let d = datum(name, "lowest-root");
            let alg = &d.algebra;
            let mut cent = 0usize;
            for odd in [false, true] {
                let mats: Vec<Mat> = alg
                    .indices_of_parity(odd)
                    .into_iter()
                    .map(|i| alg.basis[i].clone())
                    .collect();
                if !mats.is_empty() {
                    cent += kernel_basis(&mats, |x| {
                        MatrixSuperalgebra::bracket_p(&d.f, x, false, odd)
                    })
                    .len();
                }
            }
            assert_eq!(
                field_content(&d).unwrap().len(),
                cent,
                "{name}: field count vs centralizer"
            );
        }
    }

    #[test]
    fn central_charges() {
        // sl2 principal: c(k) = 3k/(k+2) − 6k − 2 = −(6k² + 11k + 4)/(k + 2)
        let d = datum("sl2", "principal");
        assert_eq!(
            central_charge_symbolic(&d),
            ratfun(&[-4, -11, -6], &[2, 1])
        );
        assert_eq!(central_charge(&d, &rat(-2, 3)).unwrap(), rat(1, 2));
        assert!(matches!(
            central_charge(&d, &rat_int(-2)),
            Err(Error::Pole(_))
        ));

        // lowest-root reductions across the stored models
        let cc = |name: &str| central_charge_symbolic(&datum(name, "lowest-root"));
        assert_eq!(cc("sl(2|1)"), ratfun(&[-3, -6], &[1]));
        assert_eq!(cc("sl(2|2)"), ratfun(&[-5, -6], &[1]));
        // −3(2k+1)(4k+5) / (2(2k+3))
        let expected = RatFun::new(
            Poly1::from_coeffs(vec![rat(-15, 4), rat(-21, 2), rat_int(-6)]),
            Poly1::from_coeffs(vec![rat(3, 2), Rat::one()]),
        )
        .unwrap();
        assert_eq!(cc("spo(2|1)"), expected);
        assert_eq!(
            cc("spo(2|3)"),
            RatFun::new(
                Poly1::from_coeffs(vec![rat(-7, 2), rat_int(-6)]),
                Poly1::constant(Rat::one()),
            )
            .unwrap()
        );
        assert_eq!(cc("sl3"), ratfun(&[-3, -11, -6], &[3, 1]));
        // principal sl3: c(k) = 50 − 24(k+3) − 24/(k+3)
        assert_eq!(
            central_charge_symbolic(&datum("sl3", "principal")),
            ratfun(&[-90, -94, -24], &[3, 1])
        );

        // the sl(2|2) pole at k = −h∨ = 0 is rejected even though the
        // symbolic expression cancels it
        let d22 = datum("sl(2|2)", "lowest-root");
        assert!(matches!(
            central_charge(&d22, &Rat::zero()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn sl2_matches_the_minimal_series() {
        // c(k) = c^{(p,p')} with p = u(k+2), p' = u at admissible k = v/u
        let d = datum("sl2", "principal");
        for (u, vs) in [
            (1i64, vec![0i64, 1, 2, 3, 4, 5, 6]),
            (2, vec![-1, 1, 3, 5]),
            (3, vec![-2, -1, 1, 2, 4, 5]),
            (4, vec![-3, -1, 1, 3, 5]),
            (5, vec![-4, -3, -2, -1, 1, 2, 3, 4, 6]),
        ] {
            for v in vs {
                let m = v + 2 * u; // p = u(k+2) = v + 2u
                assert!(m >= 2, "test data must be admissible");
                // the level is admissible: the weight set is constructible
                assert!(characters::principal_admissible_sl2(u, v).is_ok());
                let k = rat(v, u);
                let got = central_charge(&d, &k).unwrap();
                let diff = rat_int(m - u);
                let want = Rat::one() - rat_int(6) * &diff * &diff / (rat_int(m) * rat_int(u));
                assert_eq!(got, want, "u = {u}, v = {v}");
                if u >= 2 {
                    let (c, _) = characters::minimal_series(m, u, 0, 0).unwrap();
                    assert_eq!(got, c, "minimal series at u = {u}, v = {v}");
                }
            }
        }
        // the worked value: k = −2/3 is (u, v) = (3, −2), c = c^{(4,3)} = 1/2
        assert_eq!(central_charge(&d, &rat(-2, 3)).unwrap(), rat(1, 2));
    }

    #[test]
    fn correspondence_table() {
        let t = |n: &str| correspondence(n, "lowest-root").unwrap();
        assert_eq!(t("spo(2|1)").superconformal, "Neveu-Schwarz");
        assert_eq!(t("spo(2|1)").caveat, None);
        assert_eq!(t("sl(2|1)").superconformal, "N=2");
        assert_eq!(t("sl(2|2)").superconformal, "N=4");
        assert_eq!(t("spo(2|3)").superconformal, "N=3");
        assert_eq!(
            t("spo(2|3)").caveat.as_deref(),
            Some("after adding one fermion")
        );
        let big = t("D(2,1;a)");
        assert_eq!(big.superconformal, "big N=4");
        assert_eq!(
            big.caveat.as_deref(),
            Some("after adding four fermions and one boson")
        );
        assert!(!big.has_matrix_model);
        assert_eq!(t("sl3").superconformal, "quasi-superconformal");
        assert!(t("sl3").has_matrix_model);

        assert!(correspondence("sl2", "lowest-root").is_err());
        assert!(correspondence("sl(2|1)", "principal").is_err());
    }
}
