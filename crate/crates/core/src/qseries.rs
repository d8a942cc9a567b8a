//! Truncated q-series with Laurent-polynomial coefficients.
//!
//! A [`QSeries`] is a finite table `q-exponent → Laurent polynomial` in a
//! fixed list of variables, with the q-exponent stored in half-integer
//! units (the value `e` means `q^{e/2}`) so theta-like series with
//! exponents `n²/2` stay integral. Two truncation parameters govern all
//! arithmetic: a q-order cap and a symmetric per-variable exponent
//! window.
//!
//! The workhorse is [`expand_product`]: given factors `(1 − c·M)^{±1}`
//! with `M` a monomial `q^{e/2}·z^γ`, it expands each factor as a
//! geometric series. Factors with `e > 0` need only `⌊cap/e⌋` powers.
//! Factors at `q⁰` must move some variable (otherwise no expansion
//! direction exists and the call errors); their powers are bounded by an
//! internal window widened beyond the output window, because high
//! z-powers can recombine with q-carrying factors of opposite z-direction
//! — each unit of compensation costs at least `q^1`, so output window X
//! with q-cap N needs internal window `X + N`.
//!
//! On top of the engine: the Appell function
//! `A(x,z,q) = Σ_{n∈ℤ} q^{n²/2} zⁿ/(1+xqⁿ)` (negative-`n` terms rewritten
//! so each contributes only orders `≥ n²/2 + |n|`), the character product
//! of the two-variable series `Π(1−qⁿ)⁻¹(1+z₁qⁿ)(1+z₁⁻¹q^{n−1})·A(z₁⁻¹,
//! z₂q^{1/2}, q)`, the two-variable Kronecker identity, and the Jacobi
//! triple product `Π(1−qⁿ)(1+zq^{n−1/2})(1+z⁻¹q^{n−1/2}) = Σ q^{n²/2}zⁿ`.

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, rat_int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent-polynomial layer: exponent vector → coefficient.
pub type LaurentPoly = BTreeMap<Vec<i32>, Rat>;

/// Monomial `q^{qhalf/2} · Π zᵢ^{z[i]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QMono {
    pub qhalf: i64,
    pub z: Vec<i32>,
}

impl QMono {
    pub fn q(qhalf: i64, nvars: usize) -> QMono {
        QMono {
            qhalf,
            z: vec![0; nvars],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.qhalf == 0 && self.z.iter().all(|&e| e == 0)
    }
}

/// One factor `(1 − c·M)^{exponent}` of a product.
#[derive(Debug, Clone)]
pub struct Factor {
    pub coeff: Rat,
    pub mono: QMono,
    pub exponent: i32,
}

impl Factor {
    /// `(1 − c·M)`
    pub fn direct(coeff: Rat, mono: QMono) -> Factor {
        Factor {
            coeff,
            mono,
            exponent: 1,
        }
    }

    /// `(1 − c·M)⁻¹`
    pub fn inverse(coeff: Rat, mono: QMono) -> Factor {
        Factor {
            coeff,
            mono,
            exponent: -1,
        }
    }

    /// Flip between a factor and its reciprocal.
    pub fn reciprocal(mut self) -> Factor {
        self.exponent = -self.exponent;
        self
    }
}

/// Truncated series: exact within `q`-order ≤ `qcap_half`/2 and exponent
/// window. Missing layers are zero.
#[derive(Debug, Clone)]
pub struct QSeries {
    pub names: Vec<String>,
    pub qcap_half: i64,
    pub window: i32,
    layers: BTreeMap<i64, LaurentPoly>,
}

impl QSeries {
    pub fn zero(names: &[&str], qcap_half: i64, window: i32) -> QSeries {
        QSeries {
            names: names.iter().map(|s| s.to_string()).collect(),
            qcap_half,
            window,
            layers: BTreeMap::new(),
        }
    }

    pub fn one(names: &[&str], qcap_half: i64, window: i32) -> QSeries {
        let mut s = QSeries::zero(names, qcap_half, window);
        s.add_term(0, vec![0; s.names.len()], Rat::one());
        s
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Add `c·q^{qhalf/2}·z^exps`, silently dropping anything outside the
    /// truncation region (that is the meaning of the caps).
    pub fn add_term(&mut self, qhalf: i64, exps: Vec<i32>, c: Rat) {
        if c.is_zero() || qhalf > self.qcap_half || qhalf < 0 {
            return;
        }
        if exps.iter().any(|e| e.abs() > self.window) {
            return;
        }
        let layer = self.layers.entry(qhalf).or_default();
        match layer.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    layer.remove(&exps);
                    if layer.is_empty() {
                        self.layers.remove(&qhalf);
                    }
                }
            }
            None => {
                layer.insert(exps, c);
            }
        }
    }

    pub fn coeff(&self, qhalf: i64, exps: &[i32]) -> Rat {
        self.layers
            .get(&qhalf)
            .and_then(|l| l.get(exps))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn layers(&self) -> impl Iterator<Item = (&i64, &LaurentPoly)> {
        self.layers.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let mut out = QSeries {
            names: self.names.clone(),
            qcap_half: self.qcap_half.min(other.qcap_half),
            window: self.window.min(other.window),
            layers: BTreeMap::new(),
        };
        for src in [self, other] {
            for (q, layer) in &src.layers {
                for (z, c) in layer {
                    out.add_term(*q, z.clone(), c.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        let mut out = self.clone();
        if c.is_zero() {
            out.layers.clear();
            return out;
        }
        for layer in out.layers.values_mut() {
            for v in layer.values_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn neg(&self) -> QSeries {
        self.scale(&(-rat_int(1)))
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let mut out = QSeries {
            names: self.names.clone(),
            qcap_half: self.qcap_half.min(other.qcap_half),
            window: self.window.min(other.window),
            layers: BTreeMap::new(),
        };
        for (q1, l1) in &self.layers {
            if *q1 > out.qcap_half {
                continue;
            }
            for (q2, l2) in &other.layers {
                let q = q1 + q2;
                if q > out.qcap_half {
                    continue;
                }
                for (z1, c1) in l1 {
                    for (z2, c2) in l2 {
                        let z: Vec<i32> =
                            z1.iter().zip(z2.iter()).map(|(a, b)| a + b).collect();
                        out.add_term(q, z, c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// Multiply by a bare monomial with coefficient.
    pub fn mul_mono(&self, c: &Rat, mono: &QMono) -> QSeries {
        let mut out = QSeries {
            names: self.names.clone(),
            qcap_half: self.qcap_half,
            window: self.window,
            layers: BTreeMap::new(),
        };
        for (q, layer) in &self.layers {
            for (z, v) in layer {
                let ze: Vec<i32> = z.iter().zip(mono.z.iter()).map(|(a, b)| a + b).collect();
                out.add_term(q + mono.qhalf, ze, v * c);
            }
        }
        out
    }

    /// Restrict to a smaller truncation region.
    pub fn truncated(&self, qcap_half: i64, window: i32) -> QSeries {
        let mut out = QSeries {
            names: self.names.clone(),
            qcap_half,
            window,
            layers: BTreeMap::new(),
        };
        for (q, layer) in &self.layers {
            for (z, c) in layer {
                out.add_term(*q, z.clone(), c.clone());
            }
        }
        out
    }

    /// First coefficient difference within the given region, if any.
    pub fn first_mismatch(
        &self,
        other: &QSeries,
        qcap_half: i64,
        window: i32,
    ) -> Option<(i64, Vec<i32>, Rat, Rat)> {
        let mut keys: Vec<(i64, Vec<i32>)> = Vec::new();
        for src in [self, other] {
            for (q, layer) in &src.layers {
                if *q > qcap_half {
                    continue;
                }
                for z in layer.keys() {
                    if z.iter().all(|e| e.abs() <= window) {
                        keys.push((*q, z.clone()));
                    }
                }
            }
        }
        keys.sort();
        keys.dedup();
        for (q, z) in keys {
            let a = self.coeff(q, &z);
            let b = other.coeff(q, &z);
            if a != b {
                return Some((q, z, a, b));
            }
        }
        None
    }
}

fn fmt_qpow(qhalf: i64) -> String {
    if qhalf % 2 == 0 {
        format!("q^{{{}}}", qhalf / 2)
    } else {
        format!("q^{{{}/2}}", qhalf)
    }
}

fn fmt_layer(names: &[String], layer: &LaurentPoly) -> String {
    let mut out = String::new();
    for (z, c) in layer {
        let mut mono = String::new();
        for (name, e) in names.iter().zip(z.iter()) {
            if *e == 0 {
                continue;
            }
            if !mono.is_empty() {
                mono.push('*');
            }
            if *e == 1 {
                mono.push_str(name);
            } else {
                mono.push_str(&format!("{name}^{e}"));
            }
        }
        let abs = c.abs();
        let coeff_part = if abs.is_one() && !mono.is_empty() {
            String::new()
        } else {
            fmt_rat(&abs)
        };
        let body = match (coeff_part.is_empty(), mono.is_empty()) {
            (true, _) => mono.clone(),
            (false, true) => coeff_part,
            (false, false) => format!("{coeff_part}*{mono}"),
        };
        if out.is_empty() {
            if c < &Rat::zero() {
                out.push('-');
            }
        } else if c < &Rat::zero() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for QSeries {
    /// One `q^{c} : <laurent poly>` line per nonzero layer, ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, layer) in &self.layers {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{} : {}", fmt_qpow(*q), fmt_layer(&self.names, layer))?;
        }
        Ok(())
    }
}

/// Expansion of a single factor `(1 − c·M)^{±e}` within the caps.
fn factor_series(f: &Factor, names: &[String], qcap_half: i64, window: i32) -> Result<QSeries> {
    if f.mono.qhalf < 0 {
        return Err(Error::Precondition(
            "factor monomials need nonnegative q-order".into(),
        ));
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    if f.exponent >= 0 {
        // finite: (1 − cM)^e by repeated multiplication
        let mut base = QSeries::one(&name_refs, qcap_half, window);
        base.add_term(f.mono.qhalf, f.mono.z.clone(), -f.coeff.clone());
        let mut out = QSeries::one(&name_refs, qcap_half, window);
        for _ in 0..f.exponent {
            out = out.mul(&base);
        }
        return Ok(out);
    }
    // geometric series; power bound depends on the expansion direction
    if f.mono.is_unit() {
        return Err(Error::Precondition(
            "inverse factor at q^0 with no variable direction".into(),
        ));
    }
    let jmax = if f.mono.qhalf > 0 {
        qcap_half / f.mono.qhalf
    } else {
        window as i64
    };
    let mut geom = QSeries::one(&name_refs, qcap_half, window);
    let mut c = Rat::one();
    let mut q = 0i64;
    let mut z = vec![0i32; names.len()];
    for _ in 0..jmax {
        c *= &f.coeff;
        q += f.mono.qhalf;
        if q > qcap_half {
            break;
        }
        for (zi, mi) in z.iter_mut().zip(f.mono.z.iter()) {
            *zi += mi;
        }
        geom.add_term(q, z.clone(), c.clone());
    }
    let mut out = QSeries::one(&name_refs, qcap_half, window);
    for _ in 0..(-f.exponent) {
        out = out.mul(&geom);
    }
    Ok(out)
}

/// Product of factors, exact within q-order ≤ `qcap_half/2` and the
/// output window. Internally widens the window so that q-carrying
/// factors can bring large intermediate exponents back inside.
pub fn expand_product(
    factors: &[Factor],
    names: &[&str],
    qcap_half: i64,
    window: i32,
) -> Result<QSeries> {
    let internal = window + (qcap_half / 2 + 1) as i32;
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let mut acc = QSeries::one(names, qcap_half, internal);
    for f in factors {
        let fs = factor_series(f, &owned, qcap_half, internal)?;
        acc = acc.mul(&fs);
    }
    Ok(acc.truncated(qcap_half, window))
}

// ---------------------------------------------------------------------------
// Appell function and the two-variable character product
// ---------------------------------------------------------------------------

/// `A(x, z, q) = Σ_{n∈ℤ} q^{n²/2} zⁿ/(1+xqⁿ)` with variables `x, z`;
/// exact within q-order ≤ N and the window.
pub fn appell(n_cap: i64, window: i32) -> QSeries {
    let qcap_half = 2 * n_cap;
    let mut out = QSeries::zero(&["x", "z"], qcap_half, window);
    let mut n = 0i64;
    while n * n <= qcap_half {
        for sign in [1i64, -1] {
            if n == 0 && sign < 0 {
                continue;
            }
            let m = sign * n;
            // q^{m²/2} z^m / (1 + x q^m)
            if m >= 0 {
                // Σ_j (−x)^j q^{mj}
                let mut j = 0i64;
                while m * m + 2 * m * j <= qcap_half && j <= window as i64 {
                    let c = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                    out.add_term(m * m + 2 * m * j, vec![j as i32, m as i32], c);
                    j += 1;
                }
            } else {
                // 1/(1+xq^m) = x⁻¹q^{−m}·Σ_j (−1)^j x^{−j} q^{−mj}
                let a = -m; // positive
                let mut j = 0i64;
                while m * m + 2 * (a + a * j) <= qcap_half && j + 1 <= window as i64 {
                    let c = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                    out.add_term(m * m + 2 * (a + a * j), vec![-(j as i32) - 1, m as i32], c);
                    j += 1;
                }
            }
        }
        n += 1;
    }
    out
}

/// The substituted Appell factor `A(z₁⁻¹, z₂ q^{1/2}, q)` in the
/// variables `z1, z2`.
fn appell_substituted(qcap_half: i64, window: i32) -> QSeries {
    let mut out = QSeries::zero(&["z1", "z2"], qcap_half, window);
    let mut bound = 0i64;
    while bound * bound <= 2 * qcap_half {
        bound += 1;
    }
    for m in -bound..=bound {
        // q^{m²/2}·(z₂ q^{1/2})^m / (1 + z₁⁻¹ q^m): q-order m²/2 + m/2 + …
        // q^{(m²+m)/2} in half units is m²+m
        let base_half = m * m + m;
        if base_half > qcap_half {
            continue;
        }
        if m >= 0 {
            // Σ_j (−1)^j z₁^{−j} q^{mj}
            let mut j = 0i64;
            while base_half + 2 * m * j <= qcap_half && j <= window as i64 {
                let c = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                out.add_term(base_half + 2 * m * j, vec![-(j as i32), m as i32], c);
                j += 1;
            }
        } else {
            // 1/(1+z₁⁻¹q^{−a}) = z₁ q^a Σ_j (−1)^j z₁^j q^{aj}, a = −m
            let a = -m;
            let mut j = 0i64;
            while base_half + 2 * (a + a * j) <= qcap_half && j + 1 <= window as i64 {
                let c = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                out.add_term(base_half + 2 * (a + a * j), vec![(j as i32) + 1, m as i32], c);
                j += 1;
            }
        }
    }
    out
}

/// The two-variable character series
/// `Π_{n≥1}(1−qⁿ)⁻¹(1+z₁qⁿ)(1+z₁⁻¹q^{n−1}) · A(z₁⁻¹, z₂q^{1/2}, q)`.
pub fn character_eq_a(n_cap: i64, window: i32) -> Result<QSeries> {
    let qcap_half = 2 * n_cap;
    let names = ["z1", "z2"];
    let mut factors = Vec::new();
    // n runs one past the cap so the q^{n−1} factor reaches order N
    for n in 1..=(n_cap + 1).max(1) {
        factors.push(Factor::inverse(Rat::one(), QMono::q(2 * n, 2)));
        factors.push(Factor::direct(
            -rat_int(1),
            QMono {
                qhalf: 2 * n,
                z: vec![1, 0],
            },
        ));
        factors.push(Factor::direct(
            -rat_int(1),
            QMono {
                qhalf: 2 * (n - 1),
                z: vec![-1, 0],
            },
        ));
    }
    let prefactor = expand_product(&factors, &names, qcap_half, window + qcap_half as i32 / 2 + 1)?;
    let appell_part = appell_substituted(qcap_half, window + qcap_half as i32 / 2 + 1);
    Ok(prefactor.mul(&appell_part).truncated(qcap_half, window))
}

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

/// Result of comparing two series expansions.
#[derive(Debug, Clone)]
pub enum IdentityCheck {
    Ok,
    Mismatch {
        qhalf: i64,
        exps: Vec<i32>,
        left: Rat,
        right: Rat,
    },
}

impl IdentityCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, IdentityCheck::Ok)
    }
}

fn compare(a: &QSeries, b: &QSeries, qcap_half: i64, window: i32) -> IdentityCheck {
    match a.first_mismatch(b, qcap_half, window) {
        None => IdentityCheck::Ok,
        Some((qhalf, exps, left, right)) => IdentityCheck::Mismatch {
            qhalf,
            exps,
            left,
            right,
        },
    }
}

/// Two-variable product identity
/// `Π_{n≥1} (1−qⁿ)²(1−uvq^{n−1})(1−u⁻¹v⁻¹qⁿ) /
///  ((1−uq^{n−1})(1−u⁻¹qⁿ)(1−vq^{n−1})(1−v⁻¹qⁿ))
///  = (Σ_{m,n≥0} − Σ_{m,n≤−1}) u^m vⁿ q^{mn}`,
/// compared for all `|a|,|b| ≤ X`, `c ≤ N`.
pub fn kronecker_check(n_cap: i64, window: i32) -> Result<IdentityCheck> {
    let qcap_half = 2 * n_cap;
    let names = ["u", "v"];
    let mut factors = Vec::new();
    let mono = |qh: i64, zu: i32, zv: i32| QMono {
        qhalf: qh,
        z: vec![zu, zv],
    };
    // n runs one past the cap so the q^{n−1} factors reach order N
    for n in 1..=(n_cap + 1).max(1) {
        factors.push(Factor::direct(Rat::one(), mono(2 * n, 0, 0)));
        factors.push(Factor::direct(Rat::one(), mono(2 * n, 0, 0)));
        factors.push(Factor::direct(Rat::one(), mono(2 * (n - 1), 1, 1)));
        factors.push(Factor::direct(Rat::one(), mono(2 * n, -1, -1)));
        factors.push(Factor::inverse(Rat::one(), mono(2 * (n - 1), 1, 0)));
        factors.push(Factor::inverse(Rat::one(), mono(2 * n, -1, 0)));
        factors.push(Factor::inverse(Rat::one(), mono(2 * (n - 1), 0, 1)));
        factors.push(Factor::inverse(Rat::one(), mono(2 * n, 0, -1)));
    }
    let lhs = expand_product(&factors, &names, qcap_half, window)?;
    let mut rhs = QSeries::zero(&names, qcap_half, window);
    let bound = window as i64 + n_cap + 1;
    for m in 0..=bound {
        for n in 0..=bound {
            if m * n <= n_cap {
                rhs.add_term(2 * m * n, vec![m as i32, n as i32], Rat::one());
            }
        }
    }
    for m in 1..=bound {
        for n in 1..=bound {
            if m * n <= n_cap {
                rhs.add_term(2 * m * n, vec![-(m as i32), -(n as i32)], -rat_int(1));
            }
        }
    }
    Ok(compare(&lhs, &rhs, qcap_half, window))
}

/// Jacobi triple product
/// `Π_{n≥1}(1−qⁿ)(1+zq^{n−1/2})(1+z⁻¹q^{n−1/2}) = Σ_{n∈ℤ} q^{n²/2} zⁿ`.
pub fn jacobi_triple_check(n_cap: i64, window: i32) -> Result<IdentityCheck> {
    let qcap_half = 2 * n_cap;
    let names = ["z"];
    let mut factors = Vec::new();
    for n in 1..=n_cap.max(1) {
        factors.push(Factor::direct(
            Rat::one(),
            QMono {
                qhalf: 2 * n,
                z: vec![0],
            },
        ));
        factors.push(Factor::direct(
            -rat_int(1),
            QMono {
                qhalf: 2 * n - 1,
                z: vec![1],
            },
        ));
        factors.push(Factor::direct(
            -rat_int(1),
            QMono {
                qhalf: 2 * n - 1,
                z: vec![-1],
            },
        ));
    }
    let lhs = expand_product(&factors, &names, qcap_half, window)?;
    let mut rhs = QSeries::zero(&names, qcap_half, window);
    let mut n = 0i64;
    while n * n <= qcap_half {
        rhs.add_term(n * n, vec![n as i32], Rat::one());
        if n > 0 {
            rhs.add_term(n * n, vec![-(n as i32)], Rat::one());
        }
        n += 1;
    }
    Ok(compare(&lhs, &rhs, qcap_half, window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn partition_series() {
        let mut factors = Vec::new();
        for n in 1..=5 {
            factors.push(Factor::inverse(Rat::one(), QMono::q(2 * n, 0)));
        }
        let s = expand_product(&factors, &[], 10, 0).unwrap();
        let expect = [1, 1, 2, 3, 5, 7];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(2 * k as i64, &[]), rat_int(*e), "q^{k}");
        }
    }

    #[test]
    fn geometric_direction() {
        let f = Factor::inverse(
            Rat::one(),
            QMono {
                qhalf: 0,
                z: vec![1],
            },
        );
        let s = expand_product(&[f], &["u"], 0, 3).unwrap();
        for j in 0..=3 {
            assert_eq!(s.coeff(0, &[j]), rat_int(1));
        }
        // no expansion direction at q⁰
        let bad = Factor::inverse(Rat::one(), QMono::q(0, 1));
        assert!(expand_product(&[bad], &["u"], 4, 2).is_err());
        // empty product is 1
        let one = expand_product(&[], &["u"], 4, 2).unwrap();
        assert_eq!(one.coeff(0, &[0]), rat_int(1));
        assert_eq!(one.coeff(2, &[0]), rat_int(0));
    }

    #[test]
    fn product_multiplicativity() {
        let f1 = vec![
            Factor::inverse(Rat::one(), QMono::q(2, 1)),
            Factor::direct(
                -rat_int(1),
                QMono {
                    qhalf: 1,
                    z: vec![1],
                },
            ),
        ];
        let f2 = vec![Factor::inverse(
            rat(1, 2),
            QMono {
                qhalf: 2,
                z: vec![-1],
            },
        )];
        let all: Vec<Factor> = f1.iter().chain(f2.iter()).cloned().collect();
        let combined = expand_product(&all, &["z"], 8, 3).unwrap();
        let split = expand_product(&f1, &["z"], 8, 3)
            .unwrap()
            .mul(&expand_product(&f2, &["z"], 8, 3).unwrap());
        assert!(combined.first_mismatch(&split, 8, 2).is_none());
    }

    #[test]
    fn appell_structure() {
        let a = appell(6, 6);
        // x⁰ column: the n ≥ 0 denominators contribute their leading 1,
        // giving the partial theta series Σ_{n≥0} q^{n²/2} zⁿ; the n < 0
        // terms live entirely in negative x-powers
        for n in 0i64..=3 {
            assert_eq!(
                a.coeff(n * n, &[0, n as i32]),
                rat_int(1),
                "theta term n={n}"
            );
        }
        for n in 1i64..=3 {
            assert_eq!(
                a.coeff(n * n, &[0, -(n as i32)]),
                rat_int(0),
                "no x^0 mass at n=-{n}"
            );
        }
        // q⁰ row: 1/(1+x) = Σ (−x)^m
        for m in 0..=5i32 {
            let expect = if m % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            assert_eq!(a.coeff(0, &[m, 0]), expect, "x^{m}");
        }
        // coefficient of z¹q^{1/2}: leading term of 1/(1+xq) is 1
        assert_eq!(a.coeff(1, &[0, 1]), rat_int(1));
        // negative-n terms start at n²/2 + |n|: nothing at z^{-1} below q^{3/2}
        assert_eq!(a.coeff(1, &[0, -1]), rat_int(0));
        assert_eq!(a.coeff(3, &[-1, -1]), rat_int(1));
    }

    #[test]
    fn appell_shift_recursion() {
        // Shifting the summation index gives the q-difference relation
        // A(x,z,q) = q^{1/2}·z·A(xq, zq, q). The right-hand side is
        // rebuilt here from the shifted-argument sum
        // Σ_m q^{(m+1)²/2} z^{m+1}/(1+xq^{m+1}) (the q^{1/2}·z prefactor
        // folded in so all exponents stay nonnegative); terms with
        // denominator exponent m+1 < 0 are rewritten in x⁻¹ exactly as in
        // the defining expansion.
        let n_cap = 8i64;
        let window = 5i32;
        let qcap_half = 2 * n_cap;
        let lhs = appell(n_cap, window);
        let mut rhs = QSeries::zero(&["x", "z"], qcap_half, window);
        for m in -8i64..=8 {
            let e = m + 1; // denominator q-exponent after the shift
            let base = (m + 1) * (m + 1); // half units of q^{(m+1)²/2}
            if base > qcap_half {
                continue;
            }
            if e >= 0 {
                let mut j = 0i64;
                while base + 2 * e * j <= qcap_half && j <= window as i64 {
                    let c = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                    rhs.add_term(base + 2 * e * j, vec![j as i32, (m + 1) as i32], c);
                    j += 1;
                }
            } else {
                let a = -e;
                let mut j = 0i64;
                while base + 2 * (a + a * j) <= qcap_half && j + 1 <= window as i64 {
                    let c = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                    rhs.add_term(
                        base + 2 * (a + a * j),
                        vec![-(j as i32) - 1, (m + 1) as i32],
                        c,
                    );
                    j += 1;
                }
            }
        }
        assert!(
            lhs.first_mismatch(&rhs, qcap_half, window).is_none(),
            "shift recursion"
        );
    }

    #[test]
    fn kronecker_small() {
        assert!(kronecker_check(6, 6).unwrap().is_ok());
        assert!(kronecker_check(4, 0).unwrap().is_ok());
    }

    #[test]
    fn jacobi_small() {
        assert!(jacobi_triple_check(6, 6).unwrap().is_ok());
        // window 0 compares only the z⁰ columns of a true identity
        assert!(jacobi_triple_check(6, 0).unwrap().is_ok());
    }

    #[test]
    fn mismatch_detector() {
        // a deliberately perturbed exponent is caught with the exact
        // offending coefficient
        let good = expand_product(&[Factor::direct(Rat::one(), QMono::q(2, 0))], &[], 8, 0)
            .unwrap();
        let bad = expand_product(&[Factor::direct(Rat::one(), QMono::q(4, 0))], &[], 8, 0)
            .unwrap();
        match good.first_mismatch(&bad, 8, 0) {
            Some((qhalf, _, l, r)) => {
                assert_eq!(qhalf, 2);
                assert_eq!(l, -rat_int(1));
                assert_eq!(r, rat_int(0));
            }
            None => panic!("perturbation not detected"),
        }
    }

    #[test]
    fn eq_a_specialization() {
        // the z₂⁰ column of the substituted Appell factor equals the z⁰
        // column of A(x, z, q) under x ↦ z₁⁻¹
        let n = 5i64;
        let x = 4i32;
        let sub = appell_substituted(2 * n, x);
        let a = appell(n, x);
        for q in 0..=2 * n {
            for j in -x..=x {
                assert_eq!(
                    sub.coeff(q, &[j, 0]),
                    a.coeff(q, &[-j, 0]),
                    "q-half {q}, z1-power {j}"
                );
            }
        }
    }

    #[test]
    fn eq_a_smoke() {
        let s = character_eq_a(3, 3).unwrap();
        // constant term: prefactor (1+z1^{-1}) at n=1 contributes z1⁻¹ at
        // q⁰; Appell q⁰ row is Σ_j (−z₁⁻¹)^j… leading coefficient 1
        assert_eq!(s.coeff(0, &[0, 0]), rat_int(1));
        assert!(!s.is_zero());
    }

    #[test]
    fn display_format() {
        let mut s = QSeries::zero(&["z"], 4, 2);
        s.add_term(0, vec![0], rat_int(1));
        s.add_term(1, vec![1], rat(-3, 2));
        s.add_term(4, vec![-2], rat_int(5));
        let text = format!("{s}");
        assert_eq!(
            text,
            "q^{0} : 1\nq^{1/2} : -3/2*z\nq^{2} : 5*z^-2"
        );
    }
}
