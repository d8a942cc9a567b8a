//! Affine weights, admissibility, and boundary characters.
//!
//! Weights of an affinization ĥ* = h* ⊕ ℂK ⊕ ℂD are stored in the
//! coordinates `Λ = λ + c_K·K + c_D·D` with the invariant form extended
//! by `(K|K) = (D|D) = 0`, `(K|D) = 1`, `K, D ⊥ h*`. The level of `Λ` is
//! `(Λ|K) = c_D`, and the affine Weyl vector is `ρ̂ = ρ + h∨·D` (this is
//! the unique extension of ρ with `(ρ̂|α₀) = ½(α₀|α₀)` for
//! `α₀ = K − θ`).
//!
//! On top of the coordinates:
//! * the admissibility test `2(Λ+ρ̂|α)/(α|α) ∉ {0,−1,−2,…}` over all
//!   non-isotropic positive real roots `α + nK`,
//! * the translations `t_α(λ) = λ + (λ|K)α − ((λ|α) + ((λ|K)/2)(α|α))K`,
//! * the principal admissible weights of the rank-one algebra,
//!   `Λ_{k,j,n} = kD + ½(n − j(k+2))α`,
//! * the minimal-series parameters `c^{(p,p′)} = 1 − 6(p−p′)²/(pp′)`,
//!   `h^{(p,p′)}_{j+1,n+1} = ((p(j+1) − p′(n+1))² − (p−p′)²)/(4pp′)`,
//! * the SL₂(ℤ) action `(τ,z,t) ↦ ((aτ+b)/(cτ+d), z/(cτ+d),
//!   t − c(z|z)/(2(cτ+d)))`,
//! * boundary characters: at a boundary level — `u(k+h∨) = h∨` — the
//!   character transform reduces to a quotient of two Weyl-type
//!   denominators, expanded here as a [`QSeries`].

use crate::error::{Error, Result};
use crate::qseries::{expand_product, Factor, QMono, QSeries};
use crate::rat::{rat, rat_int, Rat};
use num_traits::{One, Signed, Zero};

/// Finite root data driving the affine pairings: a Gram matrix on the
/// chosen h*-coordinates, the positive roots split by parity, the simple
/// roots, the Weyl vector ρ (half the signed sum of positive roots), and
/// the dual Coxeter number.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub name: String,
    pub gram: Vec<Vec<Rat>>,
    pub simple: Vec<Vec<Rat>>,
    pub positive_even: Vec<Vec<Rat>>,
    pub positive_odd: Vec<Vec<Rat>>,
    pub rho: Vec<Rat>,
    pub h_dual: Rat,
}

impl RootDatum {
    /// Rank-one datum in the fundamental-weight coordinate: λ = x·ω with
    /// (xω|yω) = xy/2, so the simple root α = 2ω has (α|α) = 2 and
    /// ρ = ω.
    pub fn sl2() -> RootDatum {
        RootDatum {
            name: "sl(2)".into(),
            gram: vec![vec![rat(1, 2)]],
            simple: vec![vec![rat_int(2)]],
            positive_even: vec![vec![rat_int(2)]],
            positive_odd: vec![],
            rho: vec![rat_int(1)],
            h_dual: rat_int(2),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Bilinear form on finite coordinate vectors.
    pub fn form(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                acc += ai * &self.gram[i][j] * bj;
            }
        }
        acc
    }
}

/// `Λ = finite + c_K·K + c_D·D`; the level is `(Λ|K) = c_D`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineWeight {
    pub finite: Vec<Rat>,
    pub c_k: Rat,
    pub c_d: Rat,
}

impl AffineWeight {
    pub fn new(finite: Vec<Rat>, c_k: Rat, c_d: Rat) -> AffineWeight {
        AffineWeight { finite, c_k, c_d }
    }

    pub fn level(&self) -> Rat {
        self.c_d.clone()
    }

    /// `K` itself, for pairing checks.
    pub fn central(dim: usize) -> AffineWeight {
        AffineWeight::new(vec![Rat::zero(); dim], Rat::one(), Rat::zero())
    }

    /// Form on ĥ*: finite part through the Gram matrix plus the
    /// hyperbolic K/D block.
    pub fn pair(&self, other: &AffineWeight, rd: &RootDatum) -> Rat {
        rd.form(&self.finite, &other.finite) + &self.c_k * &other.c_d + &self.c_d * &other.c_k
    }

    pub fn add(&self, other: &AffineWeight) -> AffineWeight {
        AffineWeight {
            finite: self
                .finite
                .iter()
                .zip(other.finite.iter())
                .map(|(a, b)| a + b)
                .collect(),
            c_k: &self.c_k + &other.c_k,
            c_d: &self.c_d + &other.c_d,
        }
    }
}

/// `ρ̂ = ρ + h∨·D` for the datum.
pub fn rho_hat(rd: &RootDatum) -> AffineWeight {
    AffineWeight::new(rd.rho.clone(), Rat::zero(), rd.h_dual.clone())
}

fn is_nonpositive_integer(x: &Rat) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Does `x0 + n·s` land in {0, −1, −2, …} for some integer `n ≥ from`?
///
/// Exact for every rational slope. Writing x0 = a/b and s = p/q in
/// lowest terms, `x0 + n·s ∈ ℤ` is the congruence `n·pb ≡ −aq (mod bq)`;
/// if it has no solution the progression never meets ℤ. Otherwise the
/// solutions form the class `n ≡ n₀ (mod bq/g)` with g = gcd(pb, bq).
/// For s < 0 the integer values decrease without bound along the class,
/// so some value is nonpositive; for s > 0 the values increase, so only
/// the smallest class member ≥ `from` needs checking.
fn progression_hits_nonpositive(x0: &Rat, s: &Rat, from: i64) -> bool {
    use num_bigint::BigInt;
    use num_integer::Integer;
    if s.is_zero() {
        return is_nonpositive_integer(x0);
    }
    let (a, b) = (x0.numer().clone(), x0.denom().clone());
    let (p, q) = (s.numer().clone(), s.denom().clone());
    let modulus = &b * &q;
    let lhs = &p * &b;
    let rhs = -(&a * &q);
    let e = lhs.extended_gcd(&modulus);
    if !(&rhs % &e.gcd).is_zero() {
        return false;
    }
    if s.is_negative() {
        return true;
    }
    let step = &modulus / &e.gcd;
    let n0 = ((&rhs / &e.gcd) * &e.x).mod_floor(&step);
    // smallest solution ≥ from
    let fromb = BigInt::from(from);
    let mut n_star = &n0 + (&fromb - &n0).div_floor(&step) * &step;
    while n_star < fromb {
        n_star += &step;
    }
    let value = x0 + Rat::from_integer(n_star) * s;
    !value.is_positive()
}

/// Admissibility of `Λ`: for every non-isotropic positive real root
/// `α + nK` (α ∈ Δ⁺ for n = 0, α ∈ Δ for n ≥ 1) the value
/// `2(Λ+ρ̂ | α+nK)/(α|α) = x₀(α) + n·s(α)` must avoid {0, −1, −2, …};
/// isotropic roots and the imaginary roots `nK` are exempt. All
/// arithmetic is exact, and the n-enumeration terminates by the
/// progression analysis above.
pub fn admissible_test(w: &AffineWeight, rd: &RootDatum) -> bool {
    let shifted = w.add(&rho_hat(rd));
    let kh = shifted.c_d.clone(); // (Λ+ρ̂ | K) = k + h∨
    let mut roots: Vec<Vec<Rat>> = Vec::new();
    roots.extend(rd.positive_even.iter().cloned());
    roots.extend(rd.positive_odd.iter().cloned());
    for alpha in &roots {
        let norm = rd.form(alpha, alpha);
        if norm.is_zero() {
            continue;
        }
        let two_over = rat_int(2) / &norm;
        let x0 = rd.form(&shifted.finite, alpha) * &two_over;
        let s = &kh * &two_over;
        // n = 0 term for the positive root, n ≥ 1 for both signs
        if progression_hits_nonpositive(&x0, &s, 0) {
            return false;
        }
        if progression_hits_nonpositive(&(-&x0), &s, 1) {
            return false;
        }
    }
    true
}

/// Translation `t_α(λ) = λ + (λ|K)α − ((λ|α) + ((λ|K)/2)(α|α))K` for a
/// finite coweight α with integral pairings against the simple roots.
pub fn translate(alpha: &[Rat], w: &AffineWeight, rd: &RootDatum) -> Result<AffineWeight> {
    for beta in &rd.simple {
        if !rd.form(alpha, beta).is_integer() {
            return Err(Error::Precondition(
                "translation vector pairs non-integrally with a simple root".into(),
            ));
        }
    }
    let level = w.c_d.clone(); // (λ|K)
    let finite: Vec<Rat> = w
        .finite
        .iter()
        .zip(alpha.iter())
        .map(|(f, a)| f + &level * a)
        .collect();
    let drop = rd.form(&w.finite, alpha) + &level / rat_int(2) * rd.form(alpha, alpha);
    Ok(AffineWeight {
        finite,
        c_k: &w.c_k - &drop,
        c_d: w.c_d.clone(),
    })
}

/// The principal admissible weights of level `k = v/u` for the rank-one
/// datum: `Λ_{k,j,n} = kD + ½(n − j(k+2))α` with `0 ≤ j ≤ u−1`,
/// `0 ≤ n ≤ u(k+2) − 2`. Requires gcd(|v|, u) = 1, u ≥ 1 and
/// `u(k+2) ≥ 2`.
pub fn principal_admissible_sl2(u: i64, v: i64) -> Result<Vec<AffineWeight>> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    if u < 1 || gcd(v.abs(), u) != 1 {
        return Err(Error::Precondition(
            "level denominator must be positive and coprime to the numerator".into(),
        ));
    }
    let m = v + 2 * u; // u(k+2) ∈ ℤ
    if m < 2 {
        return Err(Error::Precondition(
            "u(k+2) >= 2 required for principal admissibility".into(),
        ));
    }
    let level = rat(v, u);
    let mut out = Vec::new();
    for j in 0..u {
        for n in 0..=(m - 2) {
            // ½(n − j(k+2))α has fundamental-weight coordinate n − jm/u
            let coord = rat_int(n) - rat_int(j) * rat(m, u);
            out.push(AffineWeight::new(vec![coord], Rat::zero(), level.clone()));
        }
    }
    Ok(out)
}

/// Central charge and conformal weight of the minimal-series module:
/// `c = 1 − 6(p−p′)²/(pp′)` and
/// `h_{j+1,n+1} = ((p(j+1) − p′(n+1))² − (p−p′)²)/(4pp′)` for coprime
/// `p, p′ ≥ 2`.
pub fn minimal_series(p: i64, pp: i64, j: i64, n: i64) -> Result<(Rat, Rat)> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    if p < 2 || pp < 2 || gcd(p, pp) != 1 {
        return Err(Error::Precondition(
            "minimal series requires coprime integers p, p' >= 2".into(),
        ));
    }
    let diff = rat_int(p - pp);
    let c = rat_int(1) - rat_int(6) * &diff * &diff / rat_int(p * pp);
    let a = rat_int(p * (j + 1) - pp * (n + 1));
    let h = (&a * &a - &diff * &diff) / rat_int(4 * p * pp);
    Ok((c, h))
}

/// The SL₂(ℤ) action on coordinates `(τ, z, t)`:
/// `((aτ+b)/(cτ+d), z/(cτ+d), t − c(z|z)/(2(cτ+d)))`, evaluated at exact
/// rational points. Errors when det ≠ 1 or at the pole cτ + d = 0.
pub fn moebius(
    gamma: [[i64; 2]; 2],
    pt: &(Rat, Vec<Rat>, Rat),
    gram: &[Vec<Rat>],
) -> Result<(Rat, Vec<Rat>, Rat)> {
    let [[a, b], [c, d]] = gamma;
    if a * d - b * c != 1 {
        return Err(Error::Precondition(
            "matrix must have determinant 1".into(),
        ));
    }
    let (tau, z, t) = pt;
    let denom = rat_int(c) * tau + rat_int(d);
    if denom.is_zero() {
        return Err(Error::Pole("c*tau + d = 0".into()));
    }
    let tau2 = (rat_int(a) * tau + rat_int(b)) / &denom;
    let z2: Vec<Rat> = z.iter().map(|zi| zi / &denom).collect();
    let mut zz = Rat::zero();
    for (i, zi) in z.iter().enumerate() {
        for (j, zj) in z.iter().enumerate() {
            zz += zi * &gram[i][j] * zj;
        }
    }
    let t2 = t - rat_int(c) * zz / (rat_int(2) * &denom);
    Ok((tau2, z2, t2))
}

/// Algebras with boundary characters implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryAlgebra {
    /// Rank one; boundary levels u(k+2) = 2.
    Sl2,
    /// Rank two with two isotropic odd simple roots; boundary levels
    /// k = m⁻¹ − 1.
    Sl21,
}

/// One positive real or imaginary root in simple-root coordinates
/// `(c₀, c₁, …, c_r)`, with parity and multiplicity.
struct AffRoot {
    coords: Vec<i64>,
    odd: bool,
    mult: u32,
}

fn affine_positive_roots(alg: BoundaryAlgebra, nmax: i64) -> Vec<AffRoot> {
    let mut out = Vec::new();
    match alg {
        BoundaryAlgebra::Sl2 => {
            for n in 0..=nmax {
                // θ + nK = nα₀ + (n+1)α₁
                out.push(AffRoot {
                    coords: vec![n, n + 1],
                    odd: false,
                    mult: 1,
                });
            }
            for n in 1..=nmax {
                // −θ + nK and nK
                out.push(AffRoot {
                    coords: vec![n, n - 1],
                    odd: false,
                    mult: 1,
                });
                out.push(AffRoot {
                    coords: vec![n, n],
                    odd: false,
                    mult: 1,
                });
            }
        }
        BoundaryAlgebra::Sl21 => {
            for n in 0..=nmax {
                // θ + nK, α₁ + nK, α₂ + nK with θ = α₁ + α₂
                out.push(AffRoot {
                    coords: vec![n, n + 1, n + 1],
                    odd: false,
                    mult: 1,
                });
                out.push(AffRoot {
                    coords: vec![n, n + 1, n],
                    odd: true,
                    mult: 1,
                });
                out.push(AffRoot {
                    coords: vec![n, n, n + 1],
                    odd: true,
                    mult: 1,
                });
            }
            for n in 1..=nmax {
                out.push(AffRoot {
                    coords: vec![n, n - 1, n - 1],
                    odd: false,
                    mult: 1,
                });
                out.push(AffRoot {
                    coords: vec![n, n - 1, n],
                    odd: true,
                    mult: 1,
                });
                out.push(AffRoot {
                    coords: vec![n, n, n - 1],
                    odd: true,
                    mult: 1,
                });
                // imaginary nK with multiplicity = rank
                out.push(AffRoot {
                    coords: vec![n, n, n],
                    odd: false,
                    mult: 2,
                });
            }
        }
    }
    out
}

/// Evaluation of `e^{−α}` for a root in simple coordinates, with the
/// simple-root letters shifted by `bᵢ` powers of q: `e^{−αᵢ} ↦ zᵢq^{bᵢ}`
/// for finite i and `e^{−α₀} ↦ q^{1+b₀}·(Πzᵢ)⁻¹` (the untransformed
/// assignment is b = 0). Returns the q-order in half units and the
/// z-exponents.
fn eval_root(coords: &[i64], b: &[i64]) -> (i64, Vec<i32>) {
    let c0 = coords[0];
    let mut qhalf = 2 * c0 * (1 + b[0]);
    let mut z = Vec::with_capacity(coords.len() - 1);
    for (i, ci) in coords.iter().enumerate().skip(1) {
        qhalf += 2 * ci * b[i];
        z.push((ci - c0) as i32);
    }
    (qhalf, z)
}

/// Denominator factors of the affine super Weyl denominator with the
/// given letter shifts: even roots contribute `(1 − e^{−α})^{mult}`, odd
/// roots `(1 + e^{−α})^{−mult}`. `flip` inverts every exponent (for the
/// denominator of a quotient).
fn denominator_factors(
    alg: BoundaryAlgebra,
    b: &[i64],
    n_cap: i64,
    flip: bool,
) -> Vec<Factor> {
    let mut out = Vec::new();
    for root in affine_positive_roots(alg, n_cap + 1) {
        let (qhalf, z) = eval_root(&root.coords, b);
        if qhalf > 2 * n_cap {
            continue;
        }
        let mono = QMono { qhalf, z };
        // (1 − (−1)^{p} e^{−α})^{(−1)^p·mult}
        let coeff = if root.odd { -Rat::one() } else { Rat::one() };
        let mut exp = if root.odd {
            -(root.mult as i32)
        } else {
            root.mult as i32
        };
        if flip {
            exp = -exp;
        }
        out.push(Factor {
            coeff,
            mono,
            exponent: exp,
        });
    }
    out
}

/// Boundary character as a quotient of Weyl-type denominators.
///
/// At a boundary level — `u(k + h∨) = h∨` — the character transform
/// carries the trivial character to `ch_{L(Λ)}`, so `R̂·ch` equals the
/// denominator product re-evaluated with the translated simple-root
/// letters `e^{−αᵢ} ↦ zᵢ q^{bᵢ}`; in particular `e^{−K} ↦ q^{1+Σbᵢ}`,
/// which is the boundary rescaling q ↦ qᵘ. The returned series is the
/// quotient (shifted letters)/(plain letters), normalized so its leading
/// coefficient is the q⁰ constant term (the `e^{ρ̂}` prefactors of the
/// two denominators differ by an overall monomial that is dropped).
///
/// Parameters: for `Sl2`, `u ≥ 1` odd and `b = (b₀, b₁)` with
/// `b₀ + b₁ = u − 1` and `b₀ ≥ 1` when `u ≥ 2`; for `Sl21`, `m ≥ 2` (or
/// m = 1, the tautological case) and `b = (b₀, b₁, b₂)` with
/// `Σbᵢ = m − 1`, `b₀ ≥ 1` when `m ≥ 2`.
pub fn boundary_character(
    alg: BoundaryAlgebra,
    b: &[i64],
    n_cap: i64,
    window: i32,
) -> Result<QSeries> {
    let (rank, names): (usize, Vec<&str>) = match alg {
        BoundaryAlgebra::Sl2 => (1, vec!["z1"]),
        BoundaryAlgebra::Sl21 => (2, vec!["z1", "z2"]),
    };
    if b.len() != rank + 1 {
        return Err(Error::Precondition(format!(
            "expected {} letter shifts, got {}",
            rank + 1,
            b.len()
        )));
    }
    if b.iter().any(|&x| x < 0) {
        return Err(Error::Precondition("letter shifts must be >= 0".into()));
    }
    let total: i64 = b.iter().sum();
    let scale = total + 1; // u for Sl2, m for Sl21
    if alg == BoundaryAlgebra::Sl2 && scale % 2 == 0 {
        return Err(Error::Precondition(
            "boundary levels k = 2/u - 2 require odd u".into(),
        ));
    }
    if scale >= 2 && b[0] < 1 {
        return Err(Error::Precondition(
            "the affine letter shift b0 must be >= 1".into(),
        ));
    }
    let zeros = vec![0i64; rank + 1];
    let mut factors = denominator_factors(alg, b, n_cap, false);
    factors.extend(denominator_factors(alg, &zeros, n_cap, true));
    expand_product(&factors, &names, 2 * n_cap, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w_sl2(coord: Rat, k: Rat) -> AffineWeight {
        AffineWeight::new(vec![coord], Rat::zero(), k)
    }

    #[test]
    fn rho_hat_normalization() {
        // (ρ̂|α₀) = ½(α₀|α₀) for α₀ = K − θ: with (θ|θ) = 2 this reads
        // h∨ − (ρ|θ) = 1
        let rd = RootDatum::sl2();
        let rho = rho_hat(&rd);
        let alpha0 = AffineWeight::new(vec![rat_int(-2)], Rat::one(), Rat::zero());
        let lhs = rho.pair(&alpha0, &rd);
        let norm = alpha0.pair(&alpha0, &rd);
        assert_eq!(lhs, norm / rat_int(2));
    }

    #[test]
    fn admissibility_examples() {
        let rd = RootDatum::sl2();
        // member of the u = 2 principal enumeration
        assert!(admissible_test(&w_sl2(rat_int(0), rat(-1, 2)), &rd));
        // excluded value: 2(Λ+ρ̂|α₁)/(α₁|α₁) = 0 at finite coordinate −1
        assert!(!admissible_test(&w_sl2(rat_int(-1), rat(1, 3)), &rd));
        // integrable level 1
        assert!(admissible_test(&w_sl2(rat_int(0), rat_int(1)), &rd));
        assert!(admissible_test(&w_sl2(rat_int(1), rat_int(1)), &rd));
        // non-example: level −3 (k + h∨ < 0) with integral coordinate
        assert!(!admissible_test(&w_sl2(rat_int(0), rat_int(-3)), &rd));
    }

    #[test]
    fn translation_laws() {
        let rd = RootDatum::sl2();
        let lam = w_sl2(rat(3, 4), rat(5, 3));
        // t_0 = identity
        let t0 = translate(&[Rat::zero()], &lam, &rd).unwrap();
        assert_eq!(t0, lam);
        // t_α(K) = K
        let k = AffineWeight::central(1);
        let tk = translate(&[rat_int(2)], &k, &rd).unwrap();
        assert_eq!(tk, k);
        // t_α ∘ t_β = t_{α+β}
        let a = vec![rat_int(2)];
        let b = vec![rat_int(-4)];
        let ab = vec![rat_int(-2)];
        let lhs = translate(&a, &translate(&b, &lam, &rd).unwrap(), &rd).unwrap();
        let rhs = translate(&ab, &lam, &rd).unwrap();
        assert_eq!(lhs, rhs);
        // level is preserved
        assert_eq!(lhs.level(), lam.level());
        // non-integral pairing rejected
        assert!(translate(&[rat(1, 3)], &lam, &rd).is_err());
    }

    #[test]
    fn principal_admissible_counts() {
        // u(k+2) = 4 → 3·3 weights
        let w1 = principal_admissible_sl2(3, -2).unwrap();
        assert_eq!(w1.len(), 9);
        // u = 1, k = 2 → the three integrable level-2 weights
        let w2 = principal_admissible_sl2(1, 2).unwrap();
        assert_eq!(w2.len(), 3);
        let coords: Vec<Rat> = w2.iter().map(|w| w.finite[0].clone()).collect();
        assert_eq!(coords, vec![rat_int(0), rat_int(1), rat_int(2)]);
        // u = 2, k = 1/2: u(k+2) = 5 → 8 weights
        let w3 = principal_admissible_sl2(2, 1).unwrap();
        assert_eq!(w3.len(), 8);
        // all pass the admissibility test
        let rd = RootDatum::sl2();
        for w in w1.iter().chain(w2.iter()).chain(w3.iter()) {
            assert!(admissible_test(w, &rd), "{w:?}");
        }
        // precondition failures
        assert!(principal_admissible_sl2(2, 2).is_err());
        assert!(principal_admissible_sl2(3, -5).is_err());
    }

    #[test]
    fn minimal_series_values() {
        let (c, h) = minimal_series(4, 3, 0, 0).unwrap();
        assert_eq!(c, rat(1, 2));
        assert_eq!(h, Rat::zero());
        // h_{1,1} = 0 always
        for (p, pp) in [(5i64, 2i64), (7, 3), (5, 4)] {
            let (_, h11) = minimal_series(p, pp, 0, 0).unwrap();
            assert_eq!(h11, Rat::zero(), "(p,p')=({p},{pp})");
        }
        let (c52, _) = minimal_series(5, 2, 1, 0).unwrap();
        assert_eq!(c52, rat(-22, 5));
        assert!(minimal_series(4, 2, 0, 0).is_err());
        assert!(minimal_series(1, 3, 0, 0).is_err());
    }

    #[test]
    fn moebius_action() {
        let gram = vec![vec![rat(1, 2)]];
        let pt = (rat(3, 2), vec![rat(1, 3)], rat(2, 7));
        // identity fixes the point
        let id = moebius([[1, 0], [0, 1]], &pt, &gram).unwrap();
        assert_eq!(id, pt);
        // S = ((0,−1),(1,0)): (−1/τ, z/τ, t − (z|z)/(2τ))
        let s = moebius([[0, -1], [1, 0]], &pt, &gram).unwrap();
        assert_eq!(s.0, rat(-2, 3));
        assert_eq!(s.1, vec![rat(2, 9)]);
        let zz = rat(1, 3) * rat(1, 2) * rat(1, 3);
        assert_eq!(s.2, rat(2, 7) - zz / rat_int(3));
        // composition = group action
        let g1 = [[1, 1], [0, 1]];
        let g2 = [[0, -1], [1, 0]];
        let prod = [[1, -1], [1, 0]]; // g1·g2
        let lhs = moebius(g1, &moebius(g2, &pt, &gram).unwrap(), &gram).unwrap();
        let rhs = moebius(prod, &pt, &gram).unwrap();
        assert_eq!(lhs, rhs);
        // pole and determinant errors
        assert!(moebius([[1, 0], [0, -1]], &pt, &gram).is_err());
        let pole = (rat(-1, 2), vec![Rat::zero()], Rat::zero());
        assert!(moebius([[1, 0], [2, 1]], &pole, &gram).is_err());
    }

    #[test]
    fn boundary_tautology() {
        // u = 1: the transform is the identity, so the quotient is 1
        for (alg, b) in [
            (BoundaryAlgebra::Sl2, vec![0i64, 0]),
            (BoundaryAlgebra::Sl21, vec![0i64, 0, 0]),
        ] {
            let ch = boundary_character(alg, &b, 5, 4).unwrap();
            let names: Vec<&str> = ch.names.iter().map(|s| s.as_str()).collect();
            let one = QSeries::one(&names, 10, 4);
            assert!(
                ch.first_mismatch(&one, 10, 4).is_none(),
                "{alg:?} tautology"
            );
        }
    }

    #[test]
    fn boundary_leading_coefficient() {
        let ch = boundary_character(BoundaryAlgebra::Sl21, &[1, 0, 0], 6, 4).unwrap();
        assert_eq!(ch.coeff(0, &[0, 0]), rat_int(1));
        // at these letter shifts the whole q⁰ layer collapses to 1:
        // the transformed finite factors coincide with the plain ones
        for (q, layer) in ch.layers() {
            if *q == 0 {
                assert_eq!(layer.len(), 1);
            }
        }
        assert!(!ch.is_zero());
    }

    #[test]
    fn boundary_parameter_validation() {
        // even u is not a boundary denominator for rank one
        assert!(boundary_character(BoundaryAlgebra::Sl2, &[1, 0], 4, 3).is_err());
        // b0 = 0 with m >= 2 violates positivity of the translated set
        assert!(boundary_character(BoundaryAlgebra::Sl21, &[0, 1, 0], 4, 3).is_err());
        // wrong arity / negative shifts
        assert!(boundary_character(BoundaryAlgebra::Sl2, &[1], 4, 3).is_err());
        assert!(boundary_character(BoundaryAlgebra::Sl21, &[2, -1, 0], 4, 3).is_err());
    }
}
