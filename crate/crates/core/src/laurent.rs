//! Exact integer Laurent polynomials in a fixed number of variables.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the
//! graded-lexicographic order (`x1 > x2 > ... > xn`), so the leading term is
//! always the last entry and rendering is stable across runs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("evaluation point has a zero coordinate at x{index}")]
    ZeroCoordinate { index: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Exponent vector of a Laurent monomial. Entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<i32>);

impl Exponents {
    pub fn new(entries: Vec<i32>) -> Self {
        Exponents(entries)
    }

    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn unit(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Exponents(e)
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn plus(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn minus(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn dominates(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// How [`LaurentPoly::render`] lays out a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderMode {
    /// `(numerator)/(monomial denominator)`, e.g. `(x2*x3 + 1)/x1`.
    #[default]
    Fraction,
    /// Flat sum of Laurent monomials, e.g. `x1^-1*x2*x3 + x1^-1`.
    Flat,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(Exponents::zero(nvars), c)
    }

    /// The variable `x_{index+1}` (0-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        Self::monomial(Exponents::unit(nvars, index), 1)
    }

    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// `x^exps` with coefficient one, from a plain integer vector.
    pub fn x_pow(exps: &[i64]) -> Self {
        Self::monomial(Exponents(exps.iter().map(|&e| e as i32).collect()), 1)
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(LaurentError::DimensionMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exponents) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_dims(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every exponent vector by `x^shift`.
    pub fn shift(&self, shift: &Exponents) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.plus(shift), c.clone()))
                .collect(),
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coordinatewise minimum exponent; zero vector for the zero polynomial.
    pub fn min_exponents(&self) -> Exponents {
        let mut m = vec![0i32; self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            for (slot, &v) in m.iter_mut().zip(e.entries()) {
                if first || v < *slot {
                    *slot = v;
                }
            }
            first = false;
        }
        Exponents(m)
    }

    /// Splits `self = numerator / x^denominator` where the numerator is an
    /// ordinary polynomial and `denominator` is as small as possible.
    pub fn as_fraction(&self) -> (LaurentPoly, Exponents) {
        let mins = self.min_exponents();
        let den = Exponents(mins.entries().iter().map(|&m| (-m).max(0)).collect());
        (self.shift(&den), den)
    }

    /// `true` if every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.entries().iter().all(|&v| v >= 0))
    }

    /// Exact division: returns `q` with `q * den == self`.
    pub fn div_exact(&self, den: &Self) -> Result<Self, LaurentError> {
        self.check_dims(den)?;
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Clear monomial factors so both sides are polynomials with no
        // monomial content, then run graded-lex long division.
        let num_min = self.min_exponents();
        let den_min = den.min_exponents();
        let num_poly = self.shift(&negate(&num_min));
        let den_poly = den.shift(&negate(&den_min));

        let (lead_e, lead_c) = den_poly.leading_term().expect("nonzero divisor");
        let lead_e = lead_e.clone();
        let lead_c = lead_c.clone();

        let mut rem = num_poly.terms;
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.iter().next_back() {
            if !re.dominates(&lead_e) {
                return Err(LaurentError::NotDivisible);
            }
            let (q, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let qe = re.minus(&lead_e);
            for (de, dc) in &den_poly.terms {
                let e = qe.plus(de);
                let c = &q * dc;
                match rem.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= c;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.add_term(qe, q);
        }
        Ok(quot.shift(&num_min.minus(&den_min)))
    }

    /// Substitutes a rational point. Every coordinate must be nonzero.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.nvars {
            return Err(LaurentError::DimensionMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        if let Some(index) = point.iter().position(|p| p.is_zero()) {
            return Err(LaurentError::ZeroCoordinate { index: index + 1 });
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e.entries()) {
                t *= x.pow(k);
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluation at `(1, ..., 1)`, i.e. the sum of all coefficients.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn render(&self, mode: RenderMode) -> String {
        match mode {
            RenderMode::Flat => render_sum(self),
            RenderMode::Fraction => {
                if self.is_polynomial() {
                    return render_sum(self);
                }
                let (num, den) = self.as_fraction();
                let num_text = render_sum(&num);
                let num_text = if num.len() > 1 {
                    format!("({num_text})")
                } else {
                    num_text
                };
                let factors = den
                    .entries()
                    .iter()
                    .filter(|&&e| e != 0)
                    .count();
                let den_text = render_monomial(&den);
                if factors > 1 {
                    format!("{num_text}/({den_text})")
                } else {
                    format!("{num_text}/{den_text}")
                }
            }
        }
    }

    /// Parses the text grammar accepted by [`LaurentPoly::render`] (both
    /// modes), plus parentheses, products, integer powers and exact division.
    pub fn parse(text: &str, nvars: usize) -> Result<Self, LaurentError> {
        Parser::new(text, nvars).parse()
    }

    /// Parses with the variable count taken from the largest `x<i>` present
    /// (at least `min_vars`).
    pub fn parse_auto(text: &str, min_vars: usize) -> Result<Self, LaurentError> {
        let nvars = scan_max_var(text).max(min_vars).max(1);
        Self::parse(text, nvars)
    }
}

fn negate(e: &Exponents) -> Exponents {
    Exponents(e.entries().iter().map(|v| -v).collect())
}

fn render_monomial(e: &Exponents) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.entries().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, k)),
        }
    }
    parts.join("*")
}

fn render_sum(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(e);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderMode::Fraction))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            /// Panics on a variable-count mismatch; use the `try_` form to
            /// handle that case.
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomial dimension mismatch")
            }
        }

        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn scan_max_var(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[start..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.unary()?;
                    acc = acc.div_exact(&den).map_err(|e| match e {
                        LaurentError::NotDivisible | LaurentError::DivisionByZero => {
                            LaurentError::Parse {
                                pos: at,
                                msg: format!("{e}"),
                            }
                        }
                        other => other,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly, LaurentError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let k = self.signed_int()?;
        if k >= 0 {
            return Ok(base.pow(k as u32));
        }
        // Negative powers only make sense for monomials.
        if base.len() != 1 {
            self.pos = at;
            return self.err("negative power of a non-monomial");
        }
        let (e, c) = base.leading_term().unwrap();
        if !c.abs().is_one() {
            self.pos = at;
            return self.err("negative power of a non-unit coefficient");
        }
        let kk = -k;
        let exps = Exponents(e.entries().iter().map(|v| -v * kk as i32).collect());
        let sign = if c.is_negative() && kk % 2 == 1 { -1 } else { 1 };
        Ok(LaurentPoly::monomial(exps, sign))
    }

    fn signed_int(&mut self) -> Result<i64, LaurentError> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            neg = true;
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer exponent");
        }
        let v: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn primary(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.err("expected variable index after 'x'");
                }
                let idx: usize = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .or_else(|_| self.err("variable index out of range"))?;
                if idx == 0 || idx > self.nvars {
                    self.pos = start;
                    return self.err(format!("variable x{idx} outside x1..x{}", self.nvars));
                }
                Ok(LaurentPoly::var(self.nvars, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .expect("digits");
                Ok(LaurentPoly::constant(self.nvars, v))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}
