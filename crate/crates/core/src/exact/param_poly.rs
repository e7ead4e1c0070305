use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

/// Polynomial over the rationals in named formal parameters.
///
/// The parameter list is kept sorted and pruned to the names that actually
/// occur, so two equal polynomials always have identical representations and
/// `==` is exact polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    params: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ParamPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        ParamPoly {
            params: Vec::new(),
            terms,
        }
    }

    /// The polynomial consisting of the single parameter `name`.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        ParamPoly {
            params: vec![name.to_string()],
            terms,
        }
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The constant value when the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.params.is_empty() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Substitute rational values for some parameters; the rest stay symbolic.
    pub fn specialize(&self, values: &BTreeMap<String, Rational>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (exps, coeff) in &self.terms {
            let mut mono = ParamPoly::constant(coeff.clone());
            for (name, &e) in self.params.iter().zip(exps) {
                if e == 0 {
                    continue;
                }
                let factor = match values.get(name) {
                    Some(v) => ParamPoly::constant(pow(v, e)),
                    None => {
                        let mut f = ParamPoly::one();
                        for _ in 0..e {
                            f = &f * &ParamPoly::var(name);
                        }
                        f
                    }
                };
                mono = &mono * &factor;
            }
            out += &mono;
        }
        out
    }

    /// Full evaluation; `None` if some parameter has no value.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Option<Rational> {
        self.specialize(values).as_constant()
    }

    fn with_params(&self, params: &[String]) -> BTreeMap<Vec<u32>, Rational> {
        if self.params == params {
            return self.terms.clone();
        }
        let positions: Vec<usize> = self
            .params
            .iter()
            .map(|p| {
                params
                    .iter()
                    .position(|q| q == p)
                    .expect("parameter in union")
            })
            .collect();
        self.terms
            .iter()
            .map(|(exps, c)| {
                let mut full = vec![0u32; params.len()];
                for (&pos, &e) in positions.iter().zip(exps) {
                    full[pos] = e;
                }
                (full, c.clone())
            })
            .collect()
    }

    fn from_parts(params: Vec<String>, mut terms: BTreeMap<Vec<u32>, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..params.len())
            .map(|i| terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return ParamPoly { params, terms };
        }
        let params = params
            .into_iter()
            .zip(&used)
            .filter_map(|(p, &u)| u.then_some(p))
            .collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| {
                let e = e
                    .into_iter()
                    .zip(&used)
                    .filter_map(|(x, &u)| u.then_some(x))
                    .collect();
                (e, c)
            })
            .collect();
        ParamPoly { params, terms }
    }
}

fn pow(base: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * base)
}

fn union(a: &[String], b: &[String]) -> Vec<String> {
    let set: BTreeSet<&String> = a.iter().chain(b).collect();
    set.into_iter().cloned().collect()
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        ParamPoly::constant(Rational::integer(c))
    }
}

impl<'b> Add<&'b ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'b ParamPoly) -> ParamPoly {
        let params = union(&self.params, &rhs.params);
        let mut terms = self.with_params(&params);
        for (e, c) in rhs.with_params(&params) {
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        ParamPoly::from_parts(params, terms)
    }
}

impl<'b> Sub<&'b ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'b ParamPoly) -> ParamPoly {
        self + &(-rhs)
    }
}

impl<'b> Mul<&'b ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'b ParamPoly) -> ParamPoly {
        let params = union(&self.params, &rhs.params);
        let lhs_terms = self.with_params(&params);
        let rhs_terms = rhs.with_params(&params);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &lhs_terms {
            for (eb, cb) in &rhs_terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        ParamPoly::from_parts(params, terms)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: &'a ParamPoly) -> ParamPoly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl<'a> AddAssign<&'a ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &'a ParamPoly) {
        *self = &*self + rhs;
    }
}

impl AddAssign<ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: ParamPoly) {
        *self = &*self + &rhs;
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (exps, coeff)) in terms.into_iter().enumerate() {
            let negative = coeff.is_negative();
            let mag = coeff.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let monomial: Vec<String> = self
                .params
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e > 0)
                .map(|(p, &e)| {
                    if e == 1 {
                        p.clone()
                    } else {
                        format!("{p}^{e}")
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{mag}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}
