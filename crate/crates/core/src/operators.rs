//! The product formula, the binomial determinant, extended summation and a
//! commutative algebra of shift operators acting on lattice functions.
//!
//! An [`OperatorExpression`] of arity `n` is a finite integer combination of
//! shifts `E^s = E_{k_1}^{s_1} ... E_{k_n}^{s_n}`, stored with one
//! coefficient per shift vector. Applied to a [`LatticeFunction`] `f` at a
//! point `k` it gives `sum_s c_s f(k + s)`.
//!
//! Variable indices in this API are 0-based; the textual syntax uses `k1`,
//! `k2`, ... for the first, second, ... coordinate.
//!
//! # Operator syntax
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power (['*'] power)*             juxtaposition multiplies
//! power  := atom ['^' int]
//! atom   := int | 'id' | '(' expr ')'
//!         | 'E' ['^' int] var                shift, exponent may be negative
//!         | 'D' ['^' int] var                forward difference E - id
//!         | 'd' ['^' int] var                backward difference id - E^-1
//!         | 'V' '(' var ',' var ')'          E_x^-1 + E_y - E_x^-1 E_y
//!         | 'Vinv' '(' var ',' var [';' 'trunc' '=' int] ')'
//!         | 'e' '(' int ';' expr (',' expr)* ')'   elementary symmetric function
//! var    := 'k' digits                       1-based
//! ```
//!
//! Examples: `e(2; D k1, D k2, D k3)`, `V(k1,k2)`, `Vinv(k1,k2; trunc=4)`,
//! `D^3 k2`, `id + D k1 d k2`.

use std::collections::BTreeMap;
use std::fmt;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm;

/// `prod_{i<j} (k_j - k_i + j - i) / (j - i)`, computed exactly.
pub fn product_formula(k: &[i64]) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            num *= BigInt::from(k[j] - k[i] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "product formula is not an integer at {k:?}");
    q
}

/// `binom(m, r) = m (m - 1) ... (m - r + 1) / r!` for any integer `m`.
pub fn binomial(m: i64, r: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..r {
        num *= BigInt::from(m - t as i64);
        den *= BigInt::from(t as i64 + 1);
    }
    num / den
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let v = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[p][p].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det [binom(k_j + j - 1, i - 1)]_{i,j}`.
pub fn binomial_determinant(k: &[i64]) -> BigInt {
    let n = k.len();
    let matrix = (0..n).map(|i| (0..n).map(|j| binomial(k[j] + j as i64, i)).collect()).collect();
    determinant(matrix)
}

/// `sum_{i=a}^{b} f(i)` with `sum_a^{a-1} = 0` and
/// `sum_a^b = -sum_{b+1}^{a-1}` when `b + 1 <= a - 1`.
pub fn extended_sum(a: i64, b: i64, mut f: impl FnMut(i64) -> BigInt) -> BigInt {
    if a <= b {
        (a..=b).map(&mut f).sum()
    } else if b == a - 1 {
        BigInt::zero()
    } else {
        -(b + 1..=a - 1).map(f).sum::<BigInt>()
    }
}

/// A total integer-valued function on `Z^n`.
pub trait LatticeFunction: Send + Sync {
    fn arity(&self) -> usize;
    fn eval(&self, point: &[i64]) -> BigInt;
}

impl<T: LatticeFunction + ?Sized> LatticeFunction for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn eval(&self, point: &[i64]) -> BigInt {
        (**self).eval(point)
    }
}

/// The product formula as a lattice function.
#[derive(Debug, Clone, Copy)]
pub struct ProductFormula {
    pub arity: usize,
}

impl LatticeFunction for ProductFormula {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, point: &[i64]) -> BigInt {
        product_formula(point)
    }
}

/// A closure viewed as a lattice function.
pub struct FnLattice<F> {
    arity: usize,
    f: F,
}

impl<F: Fn(&[i64]) -> BigInt + Send + Sync> FnLattice<F> {
    pub fn new(arity: usize, f: F) -> Self {
        FnLattice { arity, f }
    }
}

impl<F: Fn(&[i64]) -> BigInt + Send + Sync> LatticeFunction for FnLattice<F> {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, point: &[i64]) -> BigInt {
        (self.f)(point)
    }
}

/// Caches evaluations by point. With a cap, new points stop being stored
/// once the cache holds `cap` entries.
pub struct Memoized<F> {
    inner: F,
    cache: DashMap<Vec<i64>, BigInt>,
    cap: Option<usize>,
}

impl<F: LatticeFunction> Memoized<F> {
    pub fn new(inner: F) -> Self {
        Memoized { inner, cache: DashMap::new(), cap: None }
    }

    pub fn with_cap(inner: F, cap: usize) -> Self {
        Memoized { inner, cache: DashMap::new(), cap: Some(cap) }
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }
}

impl<F: LatticeFunction> LatticeFunction for Memoized<F> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn eval(&self, point: &[i64]) -> BigInt {
        if let Some(v) = self.cache.get(point) {
            return v.clone();
        }
        let v = self.inner.eval(point);
        if self.cap.is_none_or(|c| self.cache.len() < c) {
            self.cache.insert(point.to_vec(), v.clone());
        }
        v
    }
}

/// `S_{x,y} f`: evaluates `f` with coordinates `x` and `y` exchanged.
pub struct Swapped<F> {
    inner: F,
    x: usize,
    y: usize,
}

impl<F: LatticeFunction> Swapped<F> {
    pub fn new(inner: F, x: usize, y: usize) -> Self {
        Swapped { inner, x, y }
    }
}

impl<F: LatticeFunction> LatticeFunction for Swapped<F> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn eval(&self, point: &[i64]) -> BigInt {
        let mut p = point.to_vec();
        p.swap(self.x, self.y);
        self.inner.eval(&p)
    }
}

/// A normalized integer combination of shifts of fixed arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorExpression {
    arity: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

#[derive(Serialize)]
struct TermJson {
    coefficient: String,
    shift: Vec<i64>,
}

impl Serialize for OperatorExpression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            arity: usize,
            terms: Vec<TermJson>,
        }
        let terms =
            self.terms.iter().map(|(shift, c)| TermJson { coefficient: c.to_string(), shift: shift.clone() }).collect();
        Repr { arity: self.arity, terms }.serialize(s)
    }
}

impl OperatorExpression {
    pub fn zero(arity: usize) -> Self {
        OperatorExpression { arity, terms: BTreeMap::new() }
    }

    pub fn identity(arity: usize) -> Self {
        Self::scalar(arity, BigInt::one())
    }

    pub fn scalar(arity: usize, c: BigInt) -> Self {
        let mut op = Self::zero(arity);
        op.insert(vec![0; arity], c);
        op
    }

    /// `E_{k_var}^s`.
    pub fn shift(arity: usize, var: usize, s: i64) -> Self {
        assert!(var < arity, "variable {var} outside arity {arity}");
        let mut v = vec![0; arity];
        v[var] = s;
        let mut op = Self::zero(arity);
        op.insert(v, BigInt::one());
        op
    }

    /// `Delta_{k_var} = E - id`.
    pub fn delta(arity: usize, var: usize) -> Self {
        Self::shift(arity, var, 1).sub(&Self::identity(arity))
    }

    /// `delta_{k_var} = id - E^{-1}`.
    pub fn nabla(arity: usize, var: usize) -> Self {
        Self::identity(arity).sub(&Self::shift(arity, var, -1))
    }

    /// `V_{x,y} = E_x^{-1} + E_y - E_x^{-1} E_y = id + delta_x Delta_y`.
    pub fn v(arity: usize, x: usize, y: usize) -> Self {
        let ex = Self::shift(arity, x, -1);
        let ey = Self::shift(arity, y, 1);
        ex.add(&ey).sub(&ex.mul(&ey))
    }

    /// `sum_{i=0}^{trunc} (-1)^i delta_x^i Delta_y^i`, the truncated inverse of `V_{x,y}`.
    pub fn v_inv(arity: usize, x: usize, y: usize, trunc: u32) -> Self {
        let step = Self::nabla(arity, x).mul(&Self::delta(arity, y));
        let mut total = Self::zero(arity);
        let mut power = Self::identity(arity);
        for i in 0..=trunc {
            let signed = if i % 2 == 0 { power.clone() } else { power.neg() };
            total = total.add(&signed);
            power = power.mul(&step);
        }
        total
    }

    /// `e_rho(ops)`.
    pub fn elementary(rho: usize, ops: &[OperatorExpression]) -> Self {
        let arity = ops.first().map_or(0, |o| o.arity);
        let idx: Vec<usize> = (0..ops.len()).collect();
        let mut total = Self::zero(arity);
        for subset in perm::subsets_of_size(&idx, rho) {
            let term = subset.iter().fold(Self::identity(arity), |acc, &i| acc.mul(&ops[i]));
            total = total.add(&term);
        }
        total
    }

    fn insert(&mut self, shift: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(shift).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `(coefficient, shift)` pairs in increasing shift order.
    pub fn terms(&self) -> Vec<(BigInt, Vec<i64>)> {
        self.terms.iter().map(|(s, c)| (c.clone(), s.clone())).collect()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_arity(&self, other: &Self) {
        assert_eq!(self.arity, other.arity, "operators of different arity");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_arity(other);
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.insert(s.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        OperatorExpression { arity: self.arity, terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.arity);
        for (s, v) in &self.terms {
            out.insert(s.clone(), v * c);
        }
        out
    }

    /// Composition; shifts commute, so this is the polynomial product.
    pub fn mul(&self, other: &Self) -> Self {
        self.same_arity(other);
        let mut out = Self::zero(self.arity);
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let s: Vec<i64> = s1.iter().zip(s2).map(|(a, b)| a + b).collect();
                out.insert(s, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.arity), |acc, _| acc.mul(self))
    }

    /// `sum_s c_s f(point + s)`.
    pub fn apply<F: LatticeFunction + ?Sized>(&self, f: &F, point: &[i64]) -> Result<BigInt> {
        if f.arity() != self.arity {
            return Err(Error::ArityMismatch { operator: self.arity, function: f.arity() });
        }
        if point.len() != self.arity {
            return Err(Error::LengthMismatch { expected: self.arity, got: point.len() });
        }
        let mut total = BigInt::zero();
        let mut p = point.to_vec();
        for (s, c) in &self.terms {
            for ((dst, base), d) in p.iter_mut().zip(point).zip(s) {
                *dst = base + d;
            }
            total += c * f.eval(&p);
        }
        Ok(total)
    }

    /// Parses the mini-language described in the module docs.
    pub fn parse(spec: &str, arity: usize) -> Result<Self> {
        let mut p = Parser { src: spec, pos: 0, arity };
        let op = p.expr()?;
        p.skip_ws();
        if p.pos != spec.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(op)
    }
}

impl fmt::Display for OperatorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (s, c)) in self.terms.iter().enumerate() {
            let sep = if idx == 0 {
                if c.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let shifts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            write!(f, "{sep}{}*E[{}]", c.abs(), shifts.join(","))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    arity: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::OperatorSyntax { offset: self.pos, message: message.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let len = self
            .rest()
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        let id = self.rest()[..len].to_string();
        self.pos += len;
        Some(id)
    }

    fn peek_ident(&mut self) -> Option<String> {
        let save = self.pos;
        let id = self.ident();
        self.pos = save;
        id
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let len = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.error("expected an integer"));
        }
        let v: i64 = self.rest()[..len].parse().map_err(|_| self.error("integer out of range"))?;
        self.pos += len;
        Ok(if neg { -v } else { v })
    }

    fn nonneg(&mut self) -> Result<u32> {
        let at = self.pos;
        let v = self.int()?;
        u32::try_from(v)
            .map_err(|_| Error::OperatorSyntax { offset: at, message: "expected a non-negative integer".into() })
    }

    fn var(&mut self) -> Result<usize> {
        let at = self.pos;
        let id = self.ident().ok_or_else(|| self.error("expected a variable such as k1"))?;
        let idx = id
            .strip_prefix('k')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1 && i <= self.arity)
            .ok_or_else(|| Error::OperatorSyntax {
                offset: at,
                message: format!("'{id}' is not a variable k1..k{}", self.arity),
            })?;
        Ok(idx - 1)
    }

    fn expr(&mut self) -> Result<OperatorExpression> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_power(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c == '*' || c.is_ascii_alphanumeric())
    }

    fn term(&mut self) -> Result<OperatorExpression> {
        let mut acc = self.power()?;
        while self.starts_power() {
            self.eat('*');
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<OperatorExpression> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.nonneg()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('^') {
            self.int()
        } else {
            Ok(1)
        }
    }

    fn atom(&mut self) -> Result<OperatorExpression> {
        let n = self.arity;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                return Ok(inner);
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.int()?;
                return Ok(OperatorExpression::scalar(n, BigInt::from(v)));
            }
            None => return Err(self.error("unexpected end of input")),
            _ => {}
        }
        let at = self.pos;
        let id = self.ident().ok_or_else(|| self.error("unexpected character"))?;
        match id.as_str() {
            "id" => Ok(OperatorExpression::identity(n)),
            "E" => {
                let e = self.exponent()?;
                let v = self.var()?;
                Ok(OperatorExpression::shift(n, v, e))
            }
            "D" | "d" => {
                let e_at = self.pos;
                let e = self.exponent()?;
                let e = u32::try_from(e).map_err(|_| Error::OperatorSyntax {
                    offset: e_at,
                    message: "difference operators take non-negative powers".into(),
                })?;
                let v = self.var()?;
                let base = if id == "D" { OperatorExpression::delta(n, v) } else { OperatorExpression::nabla(n, v) };
                Ok(base.pow(e))
            }
            "V" | "Vinv" => {
                self.expect('(')?;
                let x = self.var()?;
                self.expect(',')?;
                let y = self.var()?;
                let op = if id == "V" {
                    OperatorExpression::v(n, x, y)
                } else {
                    let mut trunc = n as u32;
                    if self.eat(';') {
                        if self.ident().as_deref() != Some("trunc") {
                            return Err(self.error("expected 'trunc'"));
                        }
                        self.expect('=')?;
                        trunc = self.nonneg()?;
                    }
                    OperatorExpression::v_inv(n, x, y, trunc)
                };
                self.expect(')')?;
                Ok(op)
            }
            "e" => {
                self.expect('(')?;
                let rho = self.nonneg()? as usize;
                self.expect(';')?;
                let mut ops = vec![self.expr()?];
                while self.eat(',') {
                    ops.push(self.expr()?);
                }
                self.expect(')')?;
                if rho > 0 && ops.is_empty() {
                    return Err(self.error("e needs arguments"));
                }
                Ok(OperatorExpression::elementary(rho, &ops))
            }
            _ => {
                self.pos = at;
                if self.peek_ident().is_some_and(|s| s.starts_with('k')) {
                    Err(self.error("a variable must follow an operator such as E, D or d"))
                } else {
                    Err(self.error(format!("unknown operator '{id}'")))
                }
            }
        }
    }
}
