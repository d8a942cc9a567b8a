//! Truncated superpolynomial algebras.
//!
//! `SuperPoly` is an element of the algebra with `m` commuting generators
//! `x1..xm`, `n` anticommuting generators `xi1..xin`, and rational
//! coefficients, truncated at a working even-degree cap: every stored
//! monomial has total `x`-degree ≤ `cap`. The defining relations are
//! `xi*xj = xj*xi`, `xi*ξj = ξj*xi`, `ξi*ξj = −ξj*ξi` (so `ξi² = 0`);
//! the parity of a monomial is the number of `ξ` factors mod 2.
//!
//! Monomials are kept canonical: `x`-exponent vector plus the set of odd
//! indices in ascending order, with the Koszul sign absorbed into the
//! coefficient. Values carry an exactness watermark (see [`SuperPoly::exact_to`])
//! so downstream truth-values can be claimed "through degree w" honestly.
//!
//! Text format (round-trip safe):
//! `expression := ['-'] term (('+'|'-') term)*`,
//! `term := atom ('*' atom)*`, `atom := coeff | factor`,
//! `factor := ('x'|'xi') INT ('^' INT)?`, `coeff := INT ('/' INT)?`.
//! The printer emits terms in graded-lex order on `(|α|, α, S)`, leading
//! (largest) term first.

use crate::error::{Error, Result};
use crate::rat::{fmt_rat_abs, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Shape of the truncated algebra: generator counts and the even-degree cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
    pub cap: u32,
}

impl Shape {
    pub fn new(m: usize, n: usize, cap: u32) -> Shape {
        assert!(n <= 31, "at most 31 odd generators supported");
        Shape { m, n, cap }
    }

    pub fn check_match(&self, other: &Shape) -> Result<()> {
        if self != other {
            return Err(Error::ShapeMismatch(
                format!("{},{} cap {}", self.m, self.n, self.cap),
                format!("{},{} cap {}", other.m, other.n, other.cap),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}) cap {}", self.m, self.n, self.cap)
    }
}

/// Canonical monomial: exponent vector on the commuting generators and a
/// bitmask of odd indices (bit j−1 set ⇔ ξj present, factors ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    pub alpha: Vec<u16>,
    pub odd: u32,
}

impl Mono {
    pub fn one(m: usize) -> Mono {
        Mono {
            alpha: vec![0; m],
            odd: 0,
        }
    }

    pub fn even_degree(&self) -> u32 {
        self.alpha.iter().map(|&e| e as u32).sum()
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn total_degree(&self) -> u32 {
        self.even_degree() + self.odd_degree()
    }

    pub fn parity(&self) -> u8 {
        (self.odd.count_ones() & 1) as u8
    }

    /// Odd indices present, ascending, 1-based.
    pub fn odd_indices(&self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.odd & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }
}

/// Ascending graded-lex: by total x-degree, then the exponent vector
/// lexicographically, then the odd index set as an ascending list compared
/// lexicographically. The printer walks this order in reverse.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.even_degree()
            .cmp(&other.even_degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| cmp_masks(self.odd, other.odd))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison of bitmasks viewed as ascending index lists
/// (a proper prefix sorts first).
fn cmp_masks(a: u32, b: u32) -> Ordering {
    let mut a = a;
    let mut b = b;
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let la = a.trailing_zeros();
        let lb = b.trailing_zeros();
        match la.cmp(&lb) {
            Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            o => return o,
        }
    }
}

/// Koszul sign for concatenating two ascending odd blocks `a · b` and
/// re-sorting; `None` when they share an index (the product vanishes).
pub fn merge_odd(a: u32, b: u32) -> Option<(u32, i32)> {
    if a & b != 0 {
        return None;
    }
    // Count inversions: pairs (i ∈ a, j ∈ b) with i > j.
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    let sign = if inv % 2 == 0 { 1 } else { -1 };
    Some((a | b, sign))
}

/// Element of the truncated superpolynomial algebra.
#[derive(Debug, Clone)]
pub struct SuperPoly {
    pub shape: Shape,
    /// Exactness watermark on the even degree. `None`: nothing was ever
    /// dropped, the value is the full object. `Some(w)`: coefficients of
    /// even degree ≤ w match the untruncated result; beyond that unknown
    /// (w may be negative after repeated derivatives of a lossy value).
    pub exact_to: Option<i64>,
    terms: BTreeMap<Mono, Rat>,
}

/// Watermark combination for binary operations.
fn min_wm(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, w) | (w, None) => w,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl PartialEq for SuperPoly {
    /// Value equality: same shape, same terms. The watermark is metadata
    /// about exactness, not part of the value.
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.terms == other.terms
    }
}

impl SuperPoly {
    pub fn zero(shape: Shape) -> SuperPoly {
        SuperPoly {
            shape,
            exact_to: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: Shape) -> SuperPoly {
        SuperPoly::constant(shape, Rat::one())
    }

    pub fn constant(shape: Shape, c: Rat) -> SuperPoly {
        let mut p = SuperPoly::zero(shape);
        if !c.is_zero() {
            p.terms.insert(Mono::one(shape.m), c);
        }
        p
    }

    /// The generator `x_i`, 1-based.
    pub fn x(shape: Shape, i: usize) -> Result<SuperPoly> {
        if i == 0 || i > shape.m {
            return Err(Error::IndexOutOfRange {
                kind: "x",
                index: i,
                max: shape.m,
            });
        }
        let mut mono = Mono::one(shape.m);
        mono.alpha[i - 1] = 1;
        Ok(SuperPoly::from_term(shape, mono, Rat::one()))
    }

    /// The generator `ξ_j`, 1-based.
    pub fn xi(shape: Shape, j: usize) -> Result<SuperPoly> {
        if j == 0 || j > shape.n {
            return Err(Error::IndexOutOfRange {
                kind: "xi",
                index: j,
                max: shape.n,
            });
        }
        let mut mono = Mono::one(shape.m);
        mono.odd = 1 << (j - 1);
        Ok(SuperPoly::from_term(shape, mono, Rat::one()))
    }

    pub fn from_term(shape: Shape, mono: Mono, c: Rat) -> SuperPoly {
        let mut p = SuperPoly::zero(shape);
        p.add_term(mono, c);
        p
    }

    /// Insert (accumulate) one canonical term; silently drops terms above
    /// the cap and lowers the watermark accordingly.
    pub fn add_term(&mut self, mono: Mono, c: Rat) {
        debug_assert_eq!(mono.alpha.len(), self.shape.m);
        if c.is_zero() {
            return;
        }
        if mono.even_degree() > self.shape.cap {
            self.exact_to = min_wm(self.exact_to, Some(self.shape.cap as i64));
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            // keep the map free of explicit zeros
            let dead: Vec<Mono> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Mono) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree through which this value is guaranteed exact.
    pub fn exact_through(&self) -> i64 {
        match self.exact_to {
            None => self.shape.cap as i64,
            Some(w) => w.min(self.shape.cap as i64),
        }
    }

    /// Parity if parity-homogeneous (zero counts as even), else `None`.
    pub fn parity(&self) -> Option<u8> {
        let mut p: Option<u8> = None;
        for mono in self.terms.keys() {
            match p {
                None => p = Some(mono.parity()),
                Some(q) if q != mono.parity() => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn is_parity_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    /// Component of the given parity.
    pub fn parity_part(&self, parity: u8) -> SuperPoly {
        let mut out = SuperPoly::zero(self.shape);
        out.exact_to = self.exact_to;
        for (mono, c) in &self.terms {
            if mono.parity() == parity {
                out.terms.insert(mono.clone(), c.clone());
            }
        }
        out
    }

    /// Component of total degree (|α| + |S|) equal to `d`.
    pub fn total_degree_part(&self, d: u32) -> SuperPoly {
        let mut out = SuperPoly::zero(self.shape);
        out.exact_to = self.exact_to;
        for (mono, c) in &self.terms {
            if mono.total_degree() == d {
                out.terms.insert(mono.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.shape.check_match(&other.shape)?;
        let mut out = self.clone();
        out.exact_to = min_wm(self.exact_to, other.exact_to);
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperPoly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> SuperPoly {
        if c.is_zero() {
            let mut z = SuperPoly::zero(self.shape);
            z.exact_to = self.exact_to;
            return z;
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    /// Supercommutative product. Even degrees beyond the cap are dropped
    /// (watermark lowered to the cap); otherwise the result is exact
    /// through the minimum of the operand watermarks.
    pub fn mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.shape.check_match(&other.shape)?;
        let mut out = SuperPoly::zero(self.shape);
        out.exact_to = min_wm(self.exact_to, other.exact_to);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((odd, sign)) = merge_odd(ma.odd, mb.odd) else {
                    continue;
                };
                let mut alpha = ma.alpha.clone();
                for (e, f) in alpha.iter_mut().zip(&mb.alpha) {
                    *e += f;
                }
                let c = ca * cb * Rat::from_integer(sign.into());
                out.add_term(Mono { alpha, odd }, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<SuperPoly> {
        let mut acc = SuperPoly::one(self.shape);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// ∂/∂x_i (even derivation). Exactness drops by one: a degree-d
    /// coefficient of the result needs the degree-(d+1) coefficient of the
    /// input.
    pub fn deriv_even(&self, i: usize) -> Result<SuperPoly> {
        if i == 0 || i > self.shape.m {
            return Err(Error::IndexOutOfRange {
                kind: "x",
                index: i,
                max: self.shape.m,
            });
        }
        let mut out = SuperPoly::zero(self.shape);
        out.exact_to = match self.exact_to {
            None => None,
            Some(w) => Some(w - 1),
        };
        for (mono, c) in &self.terms {
            let e = mono.alpha[i - 1];
            if e == 0 {
                continue;
            }
            let mut alpha = mono.alpha.clone();
            alpha[i - 1] -= 1;
            out.add_term(
                Mono {
                    alpha,
                    odd: mono.odd,
                },
                c * Rat::from_integer(e.into()),
            );
        }
        Ok(out)
    }

    /// ∂/∂ξ_j (odd derivation, acting from the left): removing ξ_j from a
    /// canonical monomial picks up (−1)^(number of odd factors before it).
    /// Does not change even degree, so the watermark is unchanged.
    pub fn deriv_odd(&self, j: usize) -> Result<SuperPoly> {
        if j == 0 || j > self.shape.n {
            return Err(Error::IndexOutOfRange {
                kind: "xi",
                index: j,
                max: self.shape.n,
            });
        }
        let bit = 1u32 << (j - 1);
        let mut out = SuperPoly::zero(self.shape);
        out.exact_to = self.exact_to;
        for (mono, c) in &self.terms {
            if mono.odd & bit == 0 {
                continue;
            }
            let below = (mono.odd & (bit - 1)).count_ones();
            let sign = if below % 2 == 0 { 1 } else { -1 };
            out.add_term(
                Mono {
                    alpha: mono.alpha.clone(),
                    odd: mono.odd & !bit,
                },
                c * Rat::from_integer(sign.into()),
            );
        }
        Ok(out)
    }

    /// Render one canonical term (shared with the field/form printers).
    pub(crate) fn fmt_term(mono: &Mono, c: &Rat, out: &mut String) {
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in mono.alpha.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for j in mono.odd_indices() {
            factors.push(format!("xi{j}"));
        }
        let mag = c.abs();
        if factors.is_empty() {
            out.push_str(&fmt_rat_abs(c));
        } else {
            if !mag.is_one() {
                out.push_str(&fmt_rat_abs(c));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
}

impl fmt::Display for SuperPoly {
    /// Canonical form: terms in descending graded-lex order on (|α|, α, S).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (k, (mono, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            SuperPoly::fmt_term(mono, c, &mut s);
        }
        write!(f, "{s}")
    }
}

// ---------------------------------------------------------------------------
// Lexer shared by the polynomial, vector-field and form grammars.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    /// x<i>, xi<j>, dx<i>, dxi<j>
    Var(VarKind, usize),
    /// d/dx<i> or d/dxi<j>
    DDer(bool, usize), // (odd?, index)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VarKind {
    X,
    Xi,
    Dx,
    Dxi,
}

pub(crate) struct Lexer {
    pub toks: Vec<(Tok, usize)>,
    pub pos: usize,
}

impl Lexer {
    pub fn new(text: &str) -> Result<Lexer> {
        let b = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < b.len() {
            let c = b[i];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    toks.push((Tok::Plus, i));
                    i += 1;
                }
                b'-' => {
                    toks.push((Tok::Minus, i));
                    i += 1;
                }
                b'*' => {
                    toks.push((Tok::Star, i));
                    i += 1;
                }
                b'^' => {
                    toks.push((Tok::Caret, i));
                    i += 1;
                }
                b'/' => {
                    toks.push((Tok::Slash, i));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    toks.push((Tok::Int(text[start..i].to_string()), start));
                }
                b'd' | b'x' => {
                    let start = i;
                    // longest match among d/dxi, d/dx, dxi, dx, xi, x
                    let rest = &text[i..];
                    let (head, odd_der) = if rest.starts_with("d/dxi") {
                        (5, Some(true))
                    } else if rest.starts_with("d/dx") {
                        (4, Some(false))
                    } else if rest.starts_with("dxi") {
                        (3, None)
                    } else if rest.starts_with("dx") {
                        (2, None)
                    } else if rest.starts_with("xi") {
                        (2, None)
                    } else if rest.starts_with("x") {
                        (1, None)
                    } else {
                        return Err(Error::Parse {
                            pos: i,
                            msg: format!("unexpected character '{}'", c as char),
                        });
                    };
                    let kind = match &rest[..head] {
                        "dxi" => Some(VarKind::Dxi),
                        "dx" => Some(VarKind::Dx),
                        "xi" => Some(VarKind::Xi),
                        "x" => Some(VarKind::X),
                        _ => None,
                    };
                    i += head;
                    let dstart = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(Error::Parse {
                            pos: dstart,
                            msg: "expected generator index".into(),
                        });
                    }
                    let idx: usize = text[dstart..i].parse().map_err(|_| Error::Parse {
                        pos: dstart,
                        msg: "index too large".into(),
                    })?;
                    match odd_der {
                        Some(odd) => toks.push((Tok::DDer(odd, idx), start)),
                        None => toks.push((Tok::Var(kind.unwrap(), idx), start)),
                    }
                }
                _ => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("unexpected character '{}'", c as char),
                    });
                }
            }
        }
        Ok(Lexer { toks, pos: 0 })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }


    pub fn next_tok(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: if self.pos < self.toks.len() {
                self.toks[self.pos].1
            } else {
                self.toks.last().map(|&(_, p)| p + 1).unwrap_or(0)
            },
            msg: msg.into(),
        }
    }
}

/// Sign in front of a term: at most one `+` or `-` token (a repeated sign
/// is left in place so the term parser reports a syntax error there).
pub(crate) fn parse_sign(lx: &mut Lexer) -> i32 {
    match lx.peek() {
        Some(Tok::Minus) => {
            lx.pos += 1;
            -1
        }
        Some(Tok::Plus) => {
            lx.pos += 1;
            1
        }
        _ => 1,
    }
}

pub(crate) fn parse_int(lx: &mut Lexer) -> Result<num_bigint::BigInt> {
    match lx.next_tok() {
        Some(Tok::Int(s)) => Ok(s.parse().expect("digits")),
        _ => {
            lx.pos = lx.pos.saturating_sub(1);
            Err(lx.error("expected integer"))
        }
    }
}

/// `coeff := INT ('/' INT)?` — the slash binds only between two integers.
pub(crate) fn parse_coeff(lx: &mut Lexer) -> Result<Rat> {
    let n = parse_int(lx)?;
    if matches!(lx.peek(), Some(Tok::Slash)) {
        lx.pos += 1;
        let d = parse_int(lx)?;
        if d.is_zero() {
            return Err(lx.error("zero denominator"));
        }
        Ok(Rat::new(n, d))
    } else {
        Ok(Rat::from_integer(n))
    }
}

/// Optional `^ INT` exponent, defaulting to 1.
pub(crate) fn parse_exponent(lx: &mut Lexer) -> Result<u32> {
    if matches!(lx.peek(), Some(Tok::Caret)) {
        lx.pos += 1;
        let e = parse_int(lx)?;
        u32::try_from(e).map_err(|_| lx.error("exponent out of range"))
    } else {
        Ok(1)
    }
}

/// One multiplicative term of the polynomial grammar. Stops before +, -,
/// or a derivation token (the vector-field grammar reuses this for the
/// coefficient in front of `d/dx<i>`).
pub(crate) fn parse_poly_term(lx: &mut Lexer, shape: Shape) -> Result<SuperPoly> {
    let mut acc = SuperPoly::one(shape);
    let mut first = true;
    loop {
        match lx.peek() {
            Some(Tok::Int(_)) => {
                let c = parse_coeff(lx)?;
                acc = acc.scale(&c);
            }
            Some(Tok::Var(VarKind::X, i)) => {
                let i = *i;
                lx.pos += 1;
                let e = parse_exponent(lx)?;
                let x = SuperPoly::x(shape, i)?;
                acc = acc.mul(&x.pow(e)?)?;
            }
            Some(Tok::Var(VarKind::Xi, j)) => {
                let j = *j;
                lx.pos += 1;
                let e = parse_exponent(lx)?;
                let xi = SuperPoly::xi(shape, j)?;
                acc = acc.mul(&xi.pow(e)?)?;
            }
            _ if first => return Err(lx.error("expected term")),
            _ => break,
        }
        first = false;
        // optional '*' between atoms; a bare juxtaposed atom is also accepted
        if matches!(lx.peek(), Some(Tok::Star)) {
            lx.pos += 1;
            first = true; // after '*', an atom is mandatory
        } else if !matches!(
            lx.peek(),
            Some(Tok::Int(_)) | Some(Tok::Var(VarKind::X, _)) | Some(Tok::Var(VarKind::Xi, _))
        ) {
            break;
        }
    }
    Ok(acc)
}

/// Parse a superpolynomial in the canonical grammar.
pub fn parse_poly(text: &str, shape: Shape) -> Result<SuperPoly> {
    let mut lx = Lexer::new(text)?;
    if lx.done() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut out = SuperPoly::zero(shape);
    loop {
        let sign = parse_sign(&mut lx);
        let term = parse_poly_term(&mut lx, shape)?;
        out = out.add(&term.scale(&Rat::from_integer(sign.into())))?;
        match lx.peek() {
            None => break,
            Some(Tok::Plus) | Some(Tok::Minus) => continue,
            _ => return Err(lx.error("expected '+', '-' or end of input")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn sh(m: usize, n: usize, cap: u32) -> Shape {
        Shape::new(m, n, cap)
    }

    fn p(text: &str, shape: Shape) -> SuperPoly {
        parse_poly(text, shape).unwrap()
    }

    #[test]
    fn defining_relations() {
        let s = sh(0, 2, 4);
        let xi1 = SuperPoly::xi(s, 1).unwrap();
        let xi2 = SuperPoly::xi(s, 2).unwrap();
        assert_eq!(xi1.mul(&xi2).unwrap(), p("xi1*xi2", s));
        assert_eq!(xi2.mul(&xi1).unwrap(), p("-xi1*xi2", s));
        assert!(xi1.mul(&xi1).unwrap().is_zero());
    }

    #[test]
    fn square_with_odd_part() {
        // (x1 + xi1*xi2)^2 = x1^2 + 2 x1 xi1 xi2 (the odd-pair square drops).
        let s = sh(1, 2, 4);
        let a = p("x1 + xi1*xi2", s);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, p("x1^2 + 2*x1*xi1*xi2", s));
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*xi1*xi2");
    }

    #[test]
    fn even_derivatives() {
        let s = sh(2, 2, 4);
        assert_eq!(
            p("x1^2", s).deriv_even(1).unwrap(),
            p("2*x1", s)
        );
        assert!(p("x1*xi1", s).deriv_even(2).unwrap().is_zero());
        assert_eq!(
            p("x1*x2 + x1*xi1*xi2", s).deriv_even(1).unwrap(),
            p("x2 + xi1*xi2", s)
        );
    }

    #[test]
    fn odd_derivatives() {
        let s = sh(0, 3, 2);
        assert_eq!(p("xi1*xi2", s).deriv_odd(1).unwrap(), p("xi2", s));
        assert_eq!(p("xi1*xi2", s).deriv_odd(2).unwrap(), p("-xi1", s));
        let a = p("xi1*xi2*xi3", s);
        // ∂ξ2 then ∂ξ2 kills everything
        assert!(a.deriv_odd(2).unwrap().deriv_odd(2).unwrap().is_zero());
        // odd derivatives anticommute: ∂1∂2 + ∂2∂1 = 0
        let d12 = a.deriv_odd(2).unwrap().deriv_odd(1).unwrap();
        let d21 = a.deriv_odd(1).unwrap().deriv_odd(2).unwrap();
        assert_eq!(d12.add(&d21).unwrap(), SuperPoly::zero(s));
    }

    #[test]
    fn deriv_odd_of_even_var_is_zero() {
        let s = sh(1, 1, 2);
        assert!(p("x1", s).deriv_odd(1).unwrap().is_zero());
    }

    #[test]
    fn parse_canonicalization_sign() {
        let s = sh(0, 2, 0);
        let a = p("3/2*xi2*xi1", s);
        let mono = Mono {
            alpha: vec![],
            odd: 0b11,
        };
        assert_eq!(a.coeff(&mono), rat(-3, 2));
        assert_eq!(a.to_string(), "-3/2*xi1*xi2");
    }

    #[test]
    fn parse_monomial_structure() {
        let s = sh(2, 2, 4);
        let a = p("x1^2*xi2", s);
        assert_eq!(a.num_terms(), 1);
        let (mono, c) = a.terms().next().unwrap();
        assert_eq!(mono.alpha, vec![2, 0]);
        assert_eq!(mono.odd, 0b10);
        assert_eq!(c, &rat_int(1));
    }

    #[test]
    fn parse_errors() {
        let s = sh(2, 2, 4);
        assert!(matches!(
            parse_poly("x1 + + x2", s),
            Err(Error::Parse { .. })
        ));
        assert!(parse_poly("x3", s).is_err()); // index out of declared range
        assert!(parse_poly("", s).is_err());
        assert!(parse_poly("x1 $ x2", s).is_err());
    }

    #[test]
    fn roundtrip_print_parse() {
        let s = sh(2, 3, 5);
        for text in [
            "x1^2 + 2*x1*xi1*xi2",
            "-3/2*xi1*xi2 + x2",
            "1",
            "0",
            "x1*x2^2*xi1*xi2*xi3 - 7*x2",
        ] {
            let a = p(text, s);
            let b = p(&a.to_string(), s);
            assert_eq!(a, b, "round trip through {text}");
        }
    }

    #[test]
    fn truncation_watermark() {
        let s = sh(1, 0, 3);
        let x = SuperPoly::x(s, 1).unwrap();
        let x2 = x.mul(&x).unwrap();
        assert_eq!(x2.exact_to, None); // nothing dropped
        let x4 = x2.mul(&x2).unwrap(); // degree 4 > cap: dropped
        assert!(x4.is_zero());
        assert_eq!(x4.exact_to, Some(3));
        assert_eq!(x4.exact_through(), 3);
        // derivative of a lossy value loses one degree of exactness
        let d = x4.deriv_even(1).unwrap();
        assert_eq!(d.exact_to, Some(2));
        // derivative of an honest polynomial stays honest
        assert_eq!(x2.deriv_even(1).unwrap().exact_to, None);
        // odd derivative does not change the even watermark
        let s2 = sh(1, 1, 3);
        let mut lossy = SuperPoly::x(s2, 1).unwrap().pow(4).unwrap();
        lossy = lossy.mul(&SuperPoly::xi(s2, 1).unwrap()).unwrap();
        assert_eq!(lossy.deriv_odd(1).unwrap().exact_to, Some(3));
    }

    #[test]
    fn parity_and_parts() {
        let s = sh(1, 2, 3);
        let a = p("x1 + xi1", s);
        assert_eq!(a.parity(), None);
        assert_eq!(a.parity_part(0), p("x1", s));
        assert_eq!(a.parity_part(1), p("xi1", s));
        assert_eq!(p("x1*xi1*xi2", s).parity(), Some(0));
        assert_eq!(p("xi2", s).parity(), Some(1));
        assert_eq!(SuperPoly::zero(s).parity(), Some(0));
    }

    #[test]
    fn supercommutativity_samples() {
        let s = sh(2, 2, 6);
        let odd1 = p("xi1 + x1*xi2", s);
        let odd2 = p("xi2 - x2*xi1", s);
        let ev = p("x1 + xi1*xi2", s);
        // odd·odd: ab = -ba
        assert_eq!(
            odd1.mul(&odd2).unwrap(),
            odd2.mul(&odd1).unwrap().neg()
        );
        // even·odd commute
        assert_eq!(ev.mul(&odd1).unwrap(), odd1.mul(&ev).unwrap());
    }
}
