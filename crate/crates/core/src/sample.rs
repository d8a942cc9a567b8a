//! Seedable random elements for the property suites.
//!
//! Every generator draws from a stream-cipher RNG (`ChaCha8`), so a fixed
//! seed reproduces the exact same elements on every run and platform.
//! Coefficients are small integers and degrees stay low, keeping exact
//! rational brackets fast over thousands of sampled triples.
//!
//! The full field algebras `W(m|n)` and the direct `E(3|6)`/`E(4|4)` models
//! close under their brackets on arbitrary parity-homogeneous elements, so
//! those samplers draw unconstrained coefficients.  The `E(5|10)` model is a
//! genuine subspace — divergence-free fields and closed 2-forms — so its
//! sampler produces elements that satisfy the constraints identically:
//! curl-style fields `(∂_j f)∂_i − (∂_i f)∂_j` (divergence cancels by
//! equality of mixed partials) and exact forms `d(f dx_i) = df ∧ dx_i`.
//!
//! Choose the polynomial cap so that nested brackets never cross it: a
//! double bracket of elements with coefficient degree ≤ d can produce
//! coefficients of degree up to about 3d + 1, so identity checks on
//! degree-3 samples want a cap of 12 or more.  Crossing the cap is not
//! silent — results carry an exact-through watermark — but a truncated
//! defect no longer cancels to zero term by term.

use crate::exceptional::{SuperElement, E36, E44, E510};
use crate::forms::Form;
use crate::rat::{rat_int, Rat};
use crate::superpoly::{Mono, Shape, SuperPoly};
use crate::wfields::VectorField;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic element generator; one instance per suite run.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Small nonzero integer coefficient in `[-3, 3]`.
    pub fn coeff(&mut self) -> Rat {
        let c = self.rng.gen_range(1..=3i64);
        if self.rng.gen_bool(0.5) {
            rat_int(-c)
        } else {
            rat_int(c)
        }
    }

    fn index(&mut self, max: usize) -> usize {
        self.rng.gen_range(0..max)
    }

    /// Random monomial of total degree ≤ `max_deg` (even + odd factors).
    pub fn mono(&mut self, shape: Shape, max_deg: u32) -> Mono {
        let total = self.rng.gen_range(0..=max_deg);
        let max_odd = (shape.n as u32).min(total);
        let odd_deg = if max_odd == 0 {
            0
        } else {
            self.rng.gen_range(0..=max_odd)
        };
        let mut odd = 0u32;
        while odd.count_ones() < odd_deg {
            odd |= 1 << self.index(shape.n);
        }
        let mut alpha = vec![0u16; shape.m];
        if shape.m > 0 {
            for _ in 0..(total - odd_deg) {
                alpha[self.index(shape.m)] += 1;
            }
        }
        Mono { alpha, odd }
    }

    /// Random monomial with the requested parity.  Requires `shape.n > 0`
    /// and `max_deg ≥ 1` when asking for odd parity.
    pub fn mono_with_parity(&mut self, shape: Shape, parity: u8, max_deg: u32) -> Mono {
        loop {
            let m = self.mono(shape, max_deg);
            if m.parity() == parity {
                return m;
            }
        }
    }

    /// Random superpolynomial: `terms` monomials of total degree ≤ `max_deg`.
    pub fn poly(&mut self, shape: Shape, max_deg: u32, terms: usize) -> SuperPoly {
        let mut p = SuperPoly::zero(shape);
        for _ in 0..terms {
            let c = self.coeff();
            p.add_term(self.mono(shape, max_deg), c);
        }
        p
    }

    /// Random parity-homogeneous superpolynomial (possibly zero only by
    /// coefficient cancellation, which the small term count makes rare).
    pub fn poly_with_parity(
        &mut self,
        shape: Shape,
        parity: u8,
        max_deg: u32,
        terms: usize,
    ) -> SuperPoly {
        let mut p = SuperPoly::zero(shape);
        for _ in 0..terms {
            let c = self.coeff();
            p.add_term(self.mono_with_parity(shape, parity, max_deg), c);
        }
        p
    }

    /// Random parity-homogeneous vector field on `W(m|n)` with coefficient
    /// degree ≤ `max_deg`.  A field of parity `p` combines even directions
    /// with parity-`p` coefficients and odd directions with parity-`(1−p)`
    /// coefficients.
    pub fn field(&mut self, shape: Shape, max_deg: u32) -> VectorField {
        let parity = if shape.n == 0 {
            0
        } else {
            self.rng.gen_range(0..=1u8)
        };
        loop {
            let mut x = VectorField::zero(shape);
            for _ in 0..self.rng.gen_range(1..=2usize) {
                let even_dir = shape.n == 0 || (shape.m > 0 && self.rng.gen_bool(0.5));
                let term = if even_dir {
                    let c = self.poly_with_parity(shape, parity, max_deg, 1);
                    VectorField::d_even(shape, 1 + self.index(shape.m), c)
                } else {
                    let c = self.poly_with_parity(shape, 1 - parity, max_deg, 1);
                    VectorField::d_odd(shape, 1 + self.index(shape.n), c)
                };
                x = x.add(&term.expect("direction index in range")).expect("same shape");
            }
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Random differential form: a polynomial coefficient wedged with
    /// `factors` random `dx`/`dξ` one-form generators.  Retries when the
    /// wedge collapses (repeated `dx` factors square to zero).
    pub fn form(&mut self, shape: Shape, factors: u32, max_deg: u32) -> Form {
        loop {
            let mut w = Form::from_poly(&self.poly(shape, max_deg, 1));
            for _ in 0..factors {
                let use_dx = shape.n == 0 || (shape.m > 0 && self.rng.gen_bool(0.5));
                let gen = if use_dx {
                    Form::dx(shape, 1 + self.index(shape.m))
                } else {
                    Form::dxi(shape, 1 + self.index(shape.n))
                };
                w = w.wedge(&gen.expect("generator index in range")).expect("same shape");
            }
            if !w.is_zero() {
                return w;
            }
        }
    }

    /// Random admissible `E(5|10)` element: with equal probability a
    /// divergence-free field (sum of two curls of random polynomials) or a
    /// closed 2-form (sum of two exact forms `df ∧ dx_i`).  Coefficient
    /// degree stays ≤ `max_deg` because the generating polynomials have
    /// degree ≤ `max_deg + 1` and each loses one degree to `∂`/`d`.
    pub fn e510(&mut self, cap: u32, max_deg: u32) -> E510 {
        let shape = Shape::new(5, 0, cap);
        if self.rng.gen_bool(0.5) {
            loop {
                let mut x = VectorField::zero(shape);
                for _ in 0..2 {
                    let f = self.poly(shape, max_deg + 1, 2);
                    let i = 1 + self.index(5);
                    let j = 1 + (i + self.index(4)) % 5;
                    let curl = VectorField::d_even(shape, i, f.deriv_even(j).expect("x index"))
                        .expect("x index")
                        .sub(
                            &VectorField::d_even(shape, j, f.deriv_even(i).expect("x index"))
                                .expect("x index"),
                        )
                        .expect("same shape");
                    x = x.add(&curl).expect("same shape");
                }
                if !x.is_zero() {
                    return E510::from_field(x);
                }
            }
        } else {
            loop {
                let mut w = Form::zero(shape);
                for _ in 0..2 {
                    let f = Form::from_poly(&self.poly(shape, max_deg + 1, 2));
                    let dxi = Form::dx(shape, 1 + self.index(5)).expect("x index");
                    let exact = f.d().expect("cap").wedge(&dxi).expect("same shape");
                    w = w.add(&exact).expect("same shape");
                }
                if !w.is_zero() {
                    return E510::from_form(w);
                }
            }
        }
    }

    /// Random parity-homogeneous element of the direct `E(3|6)` model: an
    /// even element mixes a vector field in three variables with an
    /// `sl(2)`-coefficient triple; an odd element is a pair of 1-forms.
    pub fn e36(&mut self, cap: u32, max_deg: u32) -> E36 {
        let shape = Shape::new(3, 0, cap);
        if self.rng.gen_bool(0.5) {
            loop {
                let mut x = E36::zero(shape);
                if self.rng.gen_bool(0.75) {
                    x = x
                        .add(&E36::from_field(self.field(shape, max_deg)))
                        .expect("same shape");
                }
                if self.rng.gen_bool(0.75) {
                    let g = [
                        self.poly(shape, max_deg, 1),
                        self.poly(shape, max_deg, 1),
                        self.poly(shape, max_deg, 1),
                    ];
                    x = x.add(&E36::from_sl2(shape, g)).expect("same shape");
                }
                if !x.is_zero() {
                    return x;
                }
            }
        } else {
            loop {
                let w = [self.one_form(shape, max_deg), self.one_form(shape, max_deg)];
                let x = E36::from_odd(shape, w);
                if !x.is_zero() {
                    return x;
                }
            }
        }
    }

    /// Random parity-homogeneous element of the direct `E(4|4)` model:
    /// a vector field in four variables (even) or a 1-form (odd).
    pub fn e44(&mut self, cap: u32, max_deg: u32) -> E44 {
        let shape = Shape::new(4, 0, cap);
        if self.rng.gen_bool(0.5) {
            E44::from_field(self.field(shape, max_deg))
        } else {
            E44::from_form(self.one_form(shape, max_deg))
        }
    }

    /// Random 1-form `Σ f_i dx_i` with one or two terms (possibly zero
    /// when a coefficient cancels, which callers retry around).
    fn one_form(&mut self, shape: Shape, max_deg: u32) -> Form {
        let mut w = Form::zero(shape);
        for _ in 0..self.rng.gen_range(1..=2usize) {
            let f = self.poly(shape, max_deg, 1);
            let dxi = Form::dx(shape, 1 + self.index(shape.m)).expect("x index");
            w = w.add(&dxi.scale_poly(&f).expect("same shape")).expect("same shape");
        }
        w
    }
}
