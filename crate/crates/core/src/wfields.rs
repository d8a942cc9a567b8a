//! Polynomial vector fields on the truncated superpolynomial algebra.
//!
//! A field is written `X = Σ P_i ∂/∂x_i + Σ Q_j ∂/∂ξ_j` with superpolynomial
//! coefficients; it acts on functions as a superderivation. The bracket of
//! two parity-homogeneous fields is determined by its action on the
//! coordinate functions:
//!
//! `P_i of [X,Y] = X(P_i of Y) − (−1)^{p(X)p(Y)} Y(P_i of X)` (same for Q),
//!
//! extended bilinearly over parity components. The divergence is
//! `div X = Σ ∂P_i/∂x_i + Σ (−1)^{p(Q_j)} ∂Q_j/∂ξ_j`; fields of zero
//! divergence form the special subalgebra, and the Euler fields
//! `E = Σ x_i ∂/∂x_i + Σ ξ_j ∂/∂ξ_j` and (for m = n)
//! `E_o = Σ x_i ∂/∂ξ_i + Σ ξ_i ∂/∂x_i` cut out the matrix subalgebras
//! `sl = {div X = 0, [E,X] = 0}` and `q = {[E_o,X] = 0}`.
//!
//! For m = 0 the full algebra is finite-dimensional and [`FiniteAlgebra`]
//! supports exact closure, derived-subalgebra and simplicity computations,
//! together with named families `W(0|n)`, `S(0|n)`, `H(0|n)`, the derived
//! `H'(0|n)`, and twisted copies like `S~(0|n)` obtained by multiplying a
//! family through by `1 + ξ1···ξn`.
//!
//! Text format: a field is a sum of terms `[<poly term>] d/dx<i>` or
//! `[<poly term>] d/dxi<j>`, e.g. `x1^2 d/dx2 - xi1 d/dxi2`.

use crate::error::{Error, Result};
use crate::linalg::{Elim, Inserted, KernelBuilder, SparseVec};
use crate::rat::{rat_int, Rat};
use crate::superpoly::{parse_poly_term, parse_sign, Lexer, Mono, Shape, SuperPoly, Tok};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

/// Polynomial vector field `Σ P_i ∂/∂x_i + Σ Q_j ∂/∂ξ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub shape: Shape,
    /// Coefficients of ∂/∂x_1 .. ∂/∂x_m.
    pub p: Vec<SuperPoly>,
    /// Coefficients of ∂/∂ξ_1 .. ∂/∂ξ_n.
    pub q: Vec<SuperPoly>,
}

impl VectorField {
    pub fn zero(shape: Shape) -> VectorField {
        VectorField {
            shape,
            p: vec![SuperPoly::zero(shape); shape.m],
            q: vec![SuperPoly::zero(shape); shape.n],
        }
    }

    /// `coeff · ∂/∂x_i`, 1-based.
    pub fn d_even(shape: Shape, i: usize, coeff: SuperPoly) -> Result<VectorField> {
        if i == 0 || i > shape.m {
            return Err(Error::IndexOutOfRange {
                kind: "d/dx",
                index: i,
                max: shape.m,
            });
        }
        let mut x = VectorField::zero(shape);
        x.p[i - 1] = coeff;
        Ok(x)
    }

    /// `coeff · ∂/∂ξ_j`, 1-based.
    pub fn d_odd(shape: Shape, j: usize, coeff: SuperPoly) -> Result<VectorField> {
        if j == 0 || j > shape.n {
            return Err(Error::IndexOutOfRange {
                kind: "d/dxi",
                index: j,
                max: shape.n,
            });
        }
        let mut x = VectorField::zero(shape);
        x.q[j - 1] = coeff;
        Ok(x)
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().all(|c| c.is_zero()) && self.q.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.shape.check_match(&other.shape)?;
        let mut out = self.clone();
        for (a, b) in out.p.iter_mut().zip(&other.p) {
            *a = a.add(b)?;
        }
        for (a, b) in out.q.iter_mut().zip(&other.q) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            shape: self.shape,
            p: self.p.iter().map(|c| c.neg()).collect(),
            q: self.q.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> VectorField {
        VectorField {
            shape: self.shape,
            p: self.p.iter().map(|f| f.scale(c)).collect(),
            q: self.q.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Multiply every coefficient by a superpolynomial on the left.
    pub fn mul_poly(&self, f: &SuperPoly) -> Result<VectorField> {
        let mut out = self.clone();
        for c in out.p.iter_mut() {
            *c = f.mul(c)?;
        }
        for c in out.q.iter_mut() {
            *c = f.mul(c)?;
        }
        Ok(out)
    }

    /// Parity of the field: the ∂/∂x_i slots carry even generators and the
    /// ∂/∂ξ_j slots odd ones, so a field of parity ε has P_i of parity ε
    /// and Q_j of parity ε+1. Zero counts as even; mixed gives `None`.
    pub fn parity(&self) -> Option<u8> {
        let mut par: Option<u8> = None;
        let mut check = |want: Option<u8>| -> bool {
            match (par, want) {
                (_, None) => false,
                (None, Some(w)) => {
                    par = Some(w);
                    true
                }
                (Some(p), Some(w)) => p == w,
            }
        };
        for c in &self.p {
            if !c.is_zero() && !check(c.parity()) {
                return None;
            }
        }
        for c in &self.q {
            if !c.is_zero() && !check(c.parity().map(|p| (p + 1) % 2)) {
                return None;
            }
        }
        Some(par.unwrap_or(0))
    }

    /// Component of the given parity.
    pub fn parity_part(&self, parity: u8) -> VectorField {
        VectorField {
            shape: self.shape,
            p: self.p.iter().map(|c| c.parity_part(parity)).collect(),
            q: self
                .q
                .iter()
                .map(|c| c.parity_part((parity + 1) % 2))
                .collect(),
        }
    }

    /// Apply the field to a function: `X(f) = Σ P_i ∂f/∂x_i + Σ Q_j ∂f/∂ξ_j`.
    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.shape.check_match(&f.shape)?;
        let mut out = SuperPoly::zero(self.shape);
        for (i, c) in self.p.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul(&f.deriv_even(i + 1)?)?)?;
            }
        }
        for (j, c) in self.q.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul(&f.deriv_odd(j + 1)?)?)?;
            }
        }
        Ok(out)
    }

    /// Super bracket `[X,Y]`, bilinear over parity components.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.shape.check_match(&other.shape)?;
        let mut out = VectorField::zero(self.shape);
        for px in 0..2u8 {
            for py in 0..2u8 {
                let x = self.parity_part(px);
                let y = other.parity_part(py);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let sign = if px * py == 1 { -rat_int(1) } else { rat_int(1) };
                for i in 0..self.shape.m {
                    let val = x.apply(&y.p[i])?.sub(&y.apply(&x.p[i])?.scale(&sign))?;
                    out.p[i] = out.p[i].add(&val)?;
                }
                for j in 0..self.shape.n {
                    let val = x.apply(&y.q[j])?.sub(&y.apply(&x.q[j])?.scale(&sign))?;
                    out.q[j] = out.q[j].add(&val)?;
                }
            }
        }
        Ok(out)
    }

    /// `div X = Σ ∂P_i/∂x_i + Σ (−1)^{p(Q_j)} ∂Q_j/∂ξ_j`, extended linearly
    /// over the parity components of each Q_j.
    pub fn div(&self) -> Result<SuperPoly> {
        let mut out = SuperPoly::zero(self.shape);
        for (i, c) in self.p.iter().enumerate() {
            out = out.add(&c.deriv_even(i + 1)?)?;
        }
        for (j, c) in self.q.iter().enumerate() {
            let even = c.parity_part(0).deriv_odd(j + 1)?;
            let odd = c.parity_part(1).deriv_odd(j + 1)?;
            out = out.add(&even)?.sub(&odd)?;
        }
        Ok(out)
    }

    /// Euler field `E = Σ x_i ∂/∂x_i + Σ ξ_j ∂/∂ξ_j`.
    pub fn euler(shape: Shape) -> VectorField {
        let mut e = VectorField::zero(shape);
        for i in 1..=shape.m {
            e.p[i - 1] = SuperPoly::x(shape, i).expect("index in range");
        }
        for j in 1..=shape.n {
            e.q[j - 1] = SuperPoly::xi(shape, j).expect("index in range");
        }
        e
    }

    /// Odd Euler field `E_o = Σ x_i ∂/∂ξ_i + Σ ξ_i ∂/∂x_i`; needs m = n.
    pub fn euler_odd(shape: Shape) -> Result<VectorField> {
        if shape.m != shape.n {
            return Err(Error::Precondition(format!(
                "odd Euler field needs m = n, got ({}|{})",
                shape.m, shape.n
            )));
        }
        let mut e = VectorField::zero(shape);
        for i in 1..=shape.m {
            e.q[i - 1] = SuperPoly::x(shape, i)?;
            e.p[i - 1] = SuperPoly::xi(shape, i)?;
        }
        Ok(e)
    }

    /// Weakest exactness watermark over all coefficients.
    pub fn exact_through(&self) -> i64 {
        self.p
            .iter()
            .chain(self.q.iter())
            .map(|c| c.exact_through())
            .min()
            .unwrap_or(self.shape.cap as i64)
    }
}

impl fmt::Display for VectorField {
    /// Slot-major canonical form: all ∂/∂x_1 terms (descending graded-lex),
    /// then ∂/∂x_2, …, then the ∂/∂ξ_j slots.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let mut first = true;
        let mut emit = |coeff: &SuperPoly, slot: String, s: &mut String| {
            let terms: Vec<_> = coeff.terms().collect();
            for (mono, c) in terms.into_iter().rev() {
                if first {
                    if c.is_negative() {
                        s.push('-');
                    }
                    first = false;
                } else if c.is_negative() {
                    s.push_str(" - ");
                } else {
                    s.push_str(" + ");
                }
                if mono.even_degree() == 0 && mono.odd == 0 && c.abs().is_one() {
                    s.push_str(&slot);
                } else {
                    SuperPoly::fmt_term(mono, c, s);
                    s.push(' ');
                    s.push_str(&slot);
                }
            }
        };
        for (i, c) in self.p.iter().enumerate() {
            emit(c, format!("d/dx{}", i + 1), &mut s);
        }
        for (j, c) in self.q.iter().enumerate() {
            emit(c, format!("d/dxi{}", j + 1), &mut s);
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s}")
    }
}

/// Parse a vector field: signed terms `[<poly term>] d/dx<i>` / `d/dxi<j>`.
pub fn parse_field(text: &str, shape: Shape) -> Result<VectorField> {
    let mut lx = Lexer::new(text)?;
    if lx.done() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut out = VectorField::zero(shape);
    loop {
        let sign = parse_sign(&mut lx);
        let coeff = if matches!(lx.peek(), Some(Tok::DDer(_, _))) {
            SuperPoly::one(shape)
        } else {
            parse_poly_term(&mut lx, shape)?
        };
        let coeff = coeff.scale(&rat_int(sign.into()));
        match lx.next_tok() {
            Some(Tok::DDer(false, i)) => {
                out = out.add(&VectorField::d_even(shape, i, coeff)?)?;
            }
            Some(Tok::DDer(true, j)) => {
                out = out.add(&VectorField::d_odd(shape, j, coeff)?)?;
            }
            None if coeff.is_zero() => break, // a bare 0 is the zero field
            _ => {
                lx.pos = lx.pos.saturating_sub(1);
                return Err(lx.error("expected d/dx<i> or d/dxi<j>"));
            }
        }
        match lx.peek() {
            None => break,
            Some(Tok::Plus) | Some(Tok::Minus) => continue,
            _ => return Err(lx.error("expected '+', '-' or end of input")),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Membership predicates
// ---------------------------------------------------------------------------

/// Divergence-zero (special) fields.
pub fn member_s(x: &VectorField) -> Result<bool> {
    Ok(x.div()?.is_zero())
}

/// `sl`: divergence zero and commuting with the Euler field.
pub fn member_sl(x: &VectorField) -> Result<bool> {
    Ok(x.div()?.is_zero() && x.bracket(&VectorField::euler(x.shape))?.is_zero())
}

/// `q` (m = n): commutant of the odd Euler field.
pub fn member_q(x: &VectorField) -> Result<bool> {
    let eo = VectorField::euler_odd(x.shape)?;
    Ok(x.bracket(&eo)?.is_zero())
}

// ---------------------------------------------------------------------------
// Finite-dimensional subalgebras (exact, m = 0 families)
// ---------------------------------------------------------------------------

/// Coordinate key of a field component: (slot, monomial), slots numbered
/// ∂/∂x_1..∂/∂x_m then ∂/∂ξ_1..∂/∂ξ_n.
pub type FieldKey = (usize, Mono);

pub fn field_to_vec(x: &VectorField) -> SparseVec<FieldKey> {
    let mut v = BTreeMap::new();
    for (i, c) in x.p.iter().enumerate() {
        for (mono, coef) in c.terms() {
            v.insert((i, mono.clone()), coef.clone());
        }
    }
    for (j, c) in x.q.iter().enumerate() {
        for (mono, coef) in c.terms() {
            v.insert((x.shape.m + j, mono.clone()), coef.clone());
        }
    }
    v
}

/// A finite-dimensional space of vector fields with exact linear algebra
/// over it. The span is reduced on construction; `basis` keeps the
/// independent generators in the order offered.
pub struct FiniteAlgebra {
    pub shape: Shape,
    pub name: String,
    pub basis: Vec<VectorField>,
    elim: Elim<FieldKey>,
    /// attempt index in `elim` → position in `basis`
    attempt_to_basis: Vec<Option<usize>>,
}

impl FiniteAlgebra {
    pub fn new(name: impl Into<String>, shape: Shape, gens: Vec<VectorField>) -> FiniteAlgebra {
        let mut alg = FiniteAlgebra {
            shape,
            name: name.into(),
            basis: Vec::new(),
            elim: Elim::new(),
            attempt_to_basis: Vec::new(),
        };
        for g in gens {
            let v = field_to_vec(&g);
            if v.is_empty() {
                continue;
            }
            match alg.elim.insert(v) {
                Inserted::Independent => {
                    alg.basis.push(g);
                    alg.attempt_to_basis.push(Some(alg.basis.len() - 1));
                }
                Inserted::Dependent(_) => alg.attempt_to_basis.push(None),
            }
        }
        alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &VectorField) -> bool {
        self.elim.contains(field_to_vec(x))
    }

    /// Coordinates of `x` in `basis`, if it lies in the span.
    pub fn express(&self, x: &VectorField) -> Option<Vec<Rat>> {
        let comb = self.elim.express(field_to_vec(x))?;
        let mut out = vec![Rat::zero(); self.basis.len()];
        for (attempt, c) in comb {
            let pos = self.attempt_to_basis[attempt]?;
            out[pos] = c;
        }
        Some(out)
    }

    /// Verify the span is closed under the bracket; on failure reports the
    /// offending basis pair.
    pub fn check_closed(&self) -> Result<()> {
        for i in 0..self.basis.len() {
            for j in i..self.basis.len() {
                let b = self.basis[i].bracket(&self.basis[j])?;
                if !self.contains(&b) {
                    return Err(Error::NotClosed(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.check_closed().is_ok()
    }

    /// Derived subalgebra: the span of all brackets of basis elements.
    pub fn derived(&self) -> Result<FiniteAlgebra> {
        let mut gens = Vec::new();
        for i in 0..self.basis.len() {
            for j in i..self.basis.len() {
                gens.push(self.basis[i].bracket(&self.basis[j])?);
            }
        }
        Ok(FiniteAlgebra::new(
            format!("[{0},{0}]", self.name),
            self.shape,
            gens,
        ))
    }

    /// Spans-equality with another algebra on the same shape.
    pub fn same_span(&self, other: &FiniteAlgebra) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|b| self.contains(b))
    }

    /// Matrix of `ad b_i` in the basis (columns are bracket images).
    fn ad_matrix(&self, i: usize) -> Result<Vec<Vec<Rat>>> {
        let d = self.dim();
        let mut m = vec![vec![Rat::zero(); d]; d];
        for (l, b) in self.basis.iter().enumerate() {
            let img = self.basis[i].bracket(b)?;
            let coords = self
                .express(&img)
                .ok_or(Error::NotClosed(i, l))?;
            for (k, c) in coords.into_iter().enumerate() {
                m[k][l] = c;
            }
        }
        Ok(m)
    }

    /// The smallest ad-invariant subspace containing `seed`.
    fn ideal_generated_by(&self, seed: &VectorField) -> Result<usize> {
        let mut elim: Elim<FieldKey> = Elim::new();
        let mut queue: VecDeque<VectorField> = VecDeque::new();
        if let Inserted::Independent = elim.insert(field_to_vec(seed)) {
            queue.push_back(seed.clone());
        }
        while let Some(v) = queue.pop_front() {
            for b in &self.basis {
                let w = b.bracket(&v)?;
                if w.is_zero() {
                    continue;
                }
                if let Inserted::Independent = elim.insert(field_to_vec(&w)) {
                    queue.push_back(w);
                }
            }
        }
        Ok(elim.rank())
    }

    /// Exact simplicity test.
    ///
    /// Steps: dimension ≤ 1 fails; a proper derived subalgebra fails; if the
    /// associative envelope of the adjoint operators is the full matrix
    /// algebra (dimension d²) the adjoint module is irreducible, so no
    /// proper ideal exists and the algebra is simple. Otherwise a witness
    /// search over basis vectors and pairwise sums/differences looks for a
    /// proper ideal; finding one fails, finding none passes (every family
    /// constructed in this crate is decided before that last resort).
    pub fn is_simple(&self) -> Result<bool> {
        let d = self.dim();
        if d <= 1 {
            return Ok(false);
        }
        self.check_closed()?;
        if self.derived()?.dim() != d {
            return Ok(false);
        }
        let ads: Vec<Vec<Vec<Rat>>> = (0..d).map(|i| self.ad_matrix(i)).collect::<Result<_>>()?;
        if self.envelope_is_full(&ads) {
            return Ok(true);
        }
        let mut candidates: Vec<VectorField> = self.basis.clone();
        for i in 0..d {
            for j in (i + 1)..d {
                candidates.push(self.basis[i].add(&self.basis[j])?);
                candidates.push(self.basis[i].sub(&self.basis[j])?);
            }
        }
        for c in &candidates {
            let r = self.ideal_generated_by(c)?;
            if r > 0 && r < d {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Burnside test: does the associative algebra generated by the adjoint
    /// operators have dimension d²?
    fn envelope_is_full(&self, ads: &[Vec<Vec<Rat>>]) -> bool {
        let d = self.dim();
        let full = d * d;
        let flatten = |m: &Vec<Vec<Rat>>| -> SparseVec<(u16, u16)> {
            let mut v = BTreeMap::new();
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        v.insert((r as u16, c as u16), x.clone());
                    }
                }
            }
            v
        };
        let matmul = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            let mut out = vec![vec![Rat::zero(); d]; d];
            for r in 0..d {
                for k in 0..d {
                    if a[r][k].is_zero() {
                        continue;
                    }
                    for c in 0..d {
                        if b[k][c].is_zero() {
                            continue;
                        }
                        out[r][c] = out[r][c].clone() + &a[r][k] * &b[k][c];
                    }
                }
            }
            out
        };
        let mut elim: Elim<(u16, u16)> = Elim::new();
        let mut queue: VecDeque<Vec<Vec<Rat>>> = VecDeque::new();
        for m in ads {
            if let Inserted::Independent = elim.insert(flatten(m)) {
                queue.push_back(m.clone());
            }
        }
        while let Some(a) = queue.pop_front() {
            if elim.rank() == full {
                return true;
            }
            for g in ads {
                let prod = matmul(&a, g);
                if let Inserted::Independent = elim.insert(flatten(&prod)) {
                    queue.push_back(prod);
                }
            }
        }
        elim.rank() == full
    }
}

/// All canonical monomials of the shape (x-degree ≤ cap, every odd subset),
/// in ascending graded-lex order.
pub fn all_monomials(shape: Shape) -> Vec<Mono> {
    fn alphas(m: usize, cap: u32) -> Vec<Vec<u16>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in alphas(m - 1, cap) {
            let used: u32 = rest.iter().map(|&e| e as u32).sum();
            for e in 0..=(cap - used) {
                let mut a = vec![e as u16];
                a.extend(rest.iter().copied());
                out.push(a);
            }
        }
        out
    }
    let mut monos = Vec::new();
    for alpha in alphas(shape.m, shape.cap) {
        for odd in 0..(1u32 << shape.n) {
            monos.push(Mono {
                alpha: alpha.clone(),
                odd,
            });
        }
    }
    monos.sort();
    monos
}

/// Basis of the full field algebra on the shape: every monomial in every
/// slot. For m = 0 this is the whole algebra, of dimension n·2^n.
pub fn family_w(shape: Shape) -> Vec<VectorField> {
    let monos = all_monomials(shape);
    let mut out = Vec::new();
    for i in 1..=shape.m {
        for mono in &monos {
            let c = SuperPoly::from_term(shape, mono.clone(), Rat::one());
            out.push(VectorField::d_even(shape, i, c).expect("index in range"));
        }
    }
    for j in 1..=shape.n {
        for mono in &monos {
            let c = SuperPoly::from_term(shape, mono.clone(), Rat::one());
            out.push(VectorField::d_odd(shape, j, c).expect("index in range"));
        }
    }
    out
}

/// Basis of the divergence-zero subalgebra, computed as the exact kernel
/// of the divergence on the full basis.
pub fn family_s(shape: Shape) -> Vec<VectorField> {
    let w = family_w(shape);
    let mut kb: KernelBuilder<Mono> = KernelBuilder::new();
    for b in &w {
        let d = b.div().expect("indices in range");
        let img: SparseVec<Mono> = d.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        kb.offer(img);
    }
    let mut out = Vec::new();
    for combo in kb.kernel() {
        let mut f = VectorField::zero(shape);
        for (&idx, c) in combo {
            f = f.add(&w[idx].scale(c)).expect("same shape");
        }
        out.push(f);
    }
    out
}

/// Hamiltonian fields on a purely odd shape: for each non-constant
/// monomial f of the ξ's, the field `X_f = Σ_j (∂f/∂ξ_j) ∂/∂ξ_j` (the
/// per-f sign convention does not change the span).
pub fn family_h(shape: Shape) -> Result<Vec<VectorField>> {
    if shape.m != 0 {
        return Err(Error::Precondition(
            "hamiltonian family is finite-dimensional only for m = 0".into(),
        ));
    }
    let mut out = Vec::new();
    for odd in 1u32..(1 << shape.n) {
        let f = SuperPoly::from_term(
            shape,
            Mono {
                alpha: vec![],
                odd,
            },
            Rat::one(),
        );
        let mut x = VectorField::zero(shape);
        for j in 1..=shape.n {
            x.q[j - 1] = f.deriv_odd(j)?;
        }
        if !x.is_zero() {
            out.push(x);
        }
    }
    Ok(out)
}

/// Multiply a family through by `1 + ξ1···ξn` (n must be even so the
/// multiplier is an even function).
pub fn tilde_family(shape: Shape, gens: &[VectorField]) -> Result<Vec<VectorField>> {
    if shape.n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "twist by 1 + xi1···xi{} needs an even number of odd generators",
            shape.n
        )));
    }
    let top = SuperPoly::from_term(
        shape,
        Mono {
            alpha: vec![0; shape.m],
            odd: (1u32 << shape.n) - 1,
        },
        Rat::one(),
    );
    let mult = SuperPoly::one(shape).add(&top)?;
    gens.iter().map(|g| g.mul_poly(&mult)).collect()
}

/// Resolve a family name like `W(0|2)`, `S(0|4)`, `H(0|4)`, `H'(0|4)`,
/// `S~(0|4)` into a reduced finite algebra. The cap only matters for m > 0.
pub fn algebra_by_name(name: &str, cap: u32) -> Result<FiniteAlgebra> {
    let err = || Error::UnknownName(name.to_string());
    let trimmed = name.trim();
    let open = trimmed.find('(').ok_or_else(err)?;
    let (head, rest) = trimmed.split_at(open);
    let rest = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(err)?;
    let (ms, ns) = rest.split_once('|').ok_or_else(err)?;
    let m: usize = ms.trim().parse().map_err(|_| err())?;
    let n: usize = ns.trim().parse().map_err(|_| err())?;
    if n > 31 {
        return Err(Error::Precondition("at most 31 odd generators".into()));
    }
    let shape = Shape::new(m, n, cap);
    let (letter, prime, tilde) = {
        let mut l = head.trim().to_string();
        let tilde = l.ends_with('~');
        if tilde {
            l.pop();
        }
        let prime = l.ends_with('\'');
        if prime {
            l.pop();
        }
        (l, prime, tilde)
    };
    if m != 0 {
        return Err(Error::Precondition(
            "finite families are supported for m = 0 only".into(),
        ));
    }
    let base: Vec<VectorField> = match letter.as_str() {
        "W" => family_w(shape),
        "S" => family_s(shape),
        "H" => family_h(shape)?,
        _ => return Err(err()),
    };
    let base = if prime {
        FiniteAlgebra::new(name, shape, base).derived()?.basis
    } else {
        base
    };
    let base = if tilde {
        tilde_family(shape, &base)?
    } else {
        base
    };
    Ok(FiniteAlgebra::new(trimmed, shape, base))
}

/// Super Jacobi defect for parity-homogeneous fields:
/// `(−1)^{p(X)p(Z)}[X,[Y,Z]] + (−1)^{p(Y)p(X)}[Y,[Z,X]] + (−1)^{p(Z)p(Y)}[Z,[X,Y]]`.
pub fn jacobi_defect(
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
) -> Result<VectorField> {
    let (px, py, pz) = match (x.parity(), y.parity(), z.parity()) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(Error::NotHomogeneous(
                "jacobi defect needs parity-homogeneous fields".into(),
            ))
        }
    };
    let sgn = |a: u8, b: u8| -> Rat {
        if a * b == 1 {
            -rat_int(1)
        } else {
            rat_int(1)
        }
    };
    let t1 = x.bracket(&y.bracket(z)?)?.scale(&sgn(px, pz));
    let t2 = y.bracket(&z.bracket(x)?)?.scale(&sgn(py, px));
    let t3 = z.bracket(&x.bracket(y)?)?.scale(&sgn(pz, py));
    t1.add(&t2)?.add(&t3)
}
