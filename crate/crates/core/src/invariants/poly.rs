use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::{parse_expr, CycloError, CyclotomicNumber, Expr};

/// Exponent vector ordered by graded lexicographic order (total degree first,
/// then lexicographically with x1 > x2 > …).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Σ αᵢ wᵢ.
    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&a, &w)| a as u64 * w)
            .sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, x1^d first.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == nvars - 1 {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, 0, d, &mut vec![0; nvars], &mut out);
    }
    out
}

/// Multivariate polynomial with cyclotomic coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, CyclotomicNumber>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CyclotomicNumber) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn term(nvars: usize, m: Monomial, c: CyclotomicNumber) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial arity");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        let n = m.0.len();
        Self::term(n, m, CyclotomicNumber::one())
    }

    /// The coordinate function x_{i+1}.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&CyclotomicNumber> {
        self.terms.get(m)
    }

    /// Largest monomial in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &CyclotomicNumber)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CyclotomicNumber::from_integer(-1)))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inverse().expect("stored coefficients are nonzero")),
            None => self.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity");
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, CyclotomicNumber::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes x_i ↦ `images[i]` and expands.
    pub fn substitute(&self, images: &[SparsePolynomial]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(self.nvars, SparsePolynomial::nvars);
        // powers of each image, built on demand
        let mut powers: Vec<Vec<SparsePolynomial>> = images
            .iter()
            .map(|p| vec![Self::constant(target, CyclotomicNumber::one()), p.clone()])
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Parses the polynomial text format, e.g. `2*x1^2 + (1+E(3))*x2*x3`.
    pub fn parse(src: &str, nvars: usize) -> Result<Self, CycloError> {
        let e = parse_expr(src, true)?;
        eval(&e, nvars)
    }

    /// Terms `c*x1^a1*…` joined by `+`, leading term first.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            let coeff = if c.as_rational().is_some() {
                c.render()
            } else {
                format!("({})", c.render())
            };
            if vars.is_empty() {
                parts.push(coeff);
            } else if c.is_one() {
                parts.push(vars.join("*"));
            } else {
                parts.push(format!("{coeff}*{}", vars.join("*")));
            }
        }
        parts.join("+")
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn eval(e: &Expr, nvars: usize) -> Result<SparsePolynomial, CycloError> {
    let constant = |c| SparsePolynomial::constant(nvars, c);
    Ok(match e {
        Expr::Rational(q) => constant(CyclotomicNumber::from_rational(q.clone())),
        Expr::Root(n) => constant(CyclotomicNumber::root_of_unity(*n, 1)),
        Expr::Var(i) => {
            if *i >= nvars {
                return Err(CycloError::Parse {
                    position: 0,
                    message: format!("variable x{} out of range for {nvars} variables", i + 1),
                });
            }
            SparsePolynomial::var(nvars, *i)
        }
        Expr::Neg(a) => eval(a, nvars)?.scale(&CyclotomicNumber::from_integer(-1)),
        Expr::Add(a, b) => eval(a, nvars)?.add(&eval(b, nvars)?),
        Expr::Sub(a, b) => eval(a, nvars)?.sub(&eval(b, nvars)?),
        Expr::Mul(a, b) => eval(a, nvars)?.mul(&eval(b, nvars)?),
        Expr::Div(a, b, pos) => {
            let d = eval(b, nvars)?;
            let c = as_constant(&d, nvars).ok_or(CycloError::Parse {
                position: *pos,
                message: "division by a non-constant polynomial".into(),
            })?;
            if c.is_zero() {
                return Err(CycloError::Parse {
                    position: *pos,
                    message: "division by zero".into(),
                });
            }
            eval(a, nvars)?.scale(&c.inverse()?)
        }
        Expr::Pow(a, k, pos) => {
            let base = eval(a, nvars)?;
            if *k >= 0 {
                base.pow(*k as u32)
            } else {
                let c = as_constant(&base, nvars).filter(|c| !c.is_zero()).ok_or(
                    CycloError::Parse {
                        position: *pos,
                        message: "negative power of a non-constant polynomial".into(),
                    },
                )?;
                constant(c.pow(*k)?)
            }
        }
    })
}

fn as_constant(p: &SparsePolynomial, nvars: usize) -> Option<CyclotomicNumber> {
    match p.terms.len() {
        0 => Some(CyclotomicNumber::zero()),
        1 => p.terms.get(&Monomial::one(nvars)).cloned(),
        _ => None,
    }
}
