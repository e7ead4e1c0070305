use std::collections::HashMap;
use std::fmt;

use super::window::{window_params, Window};
use super::{TBasis, TensorError, TensorModule};
use crate::exact::Rational;
use crate::lincomb::LinComb;
use crate::par::Exec;
use crate::report::CheckReport;
use crate::uea::{AwModule, WittModule};
use crate::witt::{MultiIndex, WittGen};

/// Generator of `W_n^+ ⋉ A_n^+`: a vector field `t^a d_j` or a function `t^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TensorGen {
    Field(WittGen),
    Func(MultiIndex),
}

impl fmt::Display for TensorGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorGen::Field(g) => write!(f, "{g}"),
            TensorGen::Func(a) => write!(f, "t^{a}"),
        }
    }
}

impl TensorGen {
    /// All `t^a d_j` and `t^a` with `|a| <= d`.
    pub fn all_up_to(n: usize, d: u32) -> Vec<TensorGen> {
        let mut out = Vec::new();
        for a in MultiIndex::all_up_to(n, d) {
            for j in 0..n {
                out.push(TensorGen::Field(WittGen::new(a.clone(), j)));
            }
            out.push(TensorGen::Func(a));
        }
        out
    }

    pub fn bracket(&self, other: &TensorGen) -> Vec<(TensorGen, Rational)> {
        match (self, other) {
            (TensorGen::Field(x), TensorGen::Field(y)) => x
                .bracket(y)
                .into_iter()
                .map(|(g, c)| (TensorGen::Field(g), c))
                .collect(),
            (TensorGen::Field(x), TensorGen::Func(b)) => x
                .apply_to_monomial(b)
                .map(|(e, c)| (TensorGen::Func(e), c))
                .into_iter()
                .collect(),
            (TensorGen::Func(_), TensorGen::Field(_)) => other
                .bracket(self)
                .into_iter()
                .map(|(g, c)| (g, -c))
                .collect(),
            (TensorGen::Func(_), TensorGen::Func(_)) => Vec::new(),
        }
    }

    pub fn act(&self, f: &TensorModule, b: &TBasis) -> LinComb<TBasis> {
        match self {
            TensorGen::Field(g) => f.act_gen(g, b),
            TensorGen::Func(a) => f.act_function(a, b),
        }
    }
}

struct Memo<'a> {
    f: &'a TensorModule,
    gens: &'a [TensorGen],
    cache: HashMap<(usize, TBasis), LinComb<TBasis>>,
}

impl Memo<'_> {
    fn act(&mut self, g: usize, v: &LinComb<TBasis>) -> LinComb<TBasis> {
        let mut out = LinComb::new();
        for (b, c) in v.iter() {
            let key = (g, b.clone());
            let img = self
                .cache
                .entry(key)
                .or_insert_with(|| self.gens[g].act(self.f, b));
            out.add_scaled(img, c);
        }
        out
    }
}

fn act_all(f: &TensorModule, terms: &[(TensorGen, Rational)], b: &TBasis) -> LinComb<TBasis> {
    let mut out = LinComb::new();
    for (g, c) in terms {
        out.add_scaled(&g.act(f, b), c);
    }
    out
}

/// `[x, y] v = x(y v) - y(x v)` for every unordered pair of generators of
/// degree at most `d`, plus `t^a (t^b v) = t^{a+b} v` and `t^0 v = v`, on every
/// basis vector of the window. Actions are computed exactly in the whole
/// module, so the window only selects the test vectors.
pub fn check_module_axiom(
    f: &TensorModule,
    window: &Window,
    d: u32,
    exec: Exec,
) -> Result<CheckReport, TensorError> {
    let vectors = window.all_basis();
    if vectors.is_empty() {
        return Err(TensorError::WindowTooSmall {
            radius: window.bbox().radius,
            margin: 0,
        });
    }
    let gens = TensorGen::all_up_to(f.rank(), d);
    let zero = MultiIndex::zero(f.rank());
    let outcomes = exec.map(&vectors, |b| {
        let mut memo = Memo {
            f,
            gens: &gens,
            cache: HashMap::new(),
        };
        let v = LinComb::basis(b.clone());
        let once: Vec<LinComb<TBasis>> = (0..gens.len()).map(|g| memo.act(g, &v)).collect();
        let mut checked = 0;
        let mut fails = Vec::new();
        for x in 0..gens.len() {
            for y in x..gens.len() {
                checked += 1;
                let lhs = act_all(f, &gens[x].bracket(&gens[y]), b);
                let rhs = memo.act(x, &once[y]).minus(&memo.act(y, &once[x]));
                if lhs != rhs {
                    fails.push(format!("[{}, {}] on {b:?}", gens[x], gens[y]));
                }
                if let (TensorGen::Func(a), TensorGen::Func(c)) = (&gens[x], &gens[y]) {
                    checked += 1;
                    if memo.act(x, &once[y]) != f.act_function(&a.add(c), b) {
                        fails.push(format!("t^{a} t^{c} on {b:?}"));
                    }
                }
            }
        }
        checked += 1;
        if f.act_function(&zero, b) != v {
            fails.push(format!("t^0 on {b:?}"));
        }
        (checked, fails)
    });
    let mut report = CheckReport::new("module_axiom", window_params(f, window, d));
    report.absorb(outcomes);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    use crate::kweight::{KWeightModule, Rank1Type};
    use crate::uea::WeightBox;

    #[test]
    fn polynomial_natural_module_is_a_module() {
        let f = TensorModule::from_spec(KWeightModule::polynomial(2), &"ext:1".parse().unwrap())
            .unwrap();
        let w = Window::materialize(&f, WeightBox::new(vec![1, 1], 1));
        let r = check_module_axiom(&f, &w, 2, Exec::Parallel).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.checked > 0);
    }

    #[test]
    fn laurent_generic_module_is_a_module() {
        let p = KWeightModule::new(vec![
            Rank1Type::Laurent(Rational::new(1, 3)),
            Rank1Type::Torsion,
        ]);
        let f = TensorModule::from_spec(p, &"hw:2:1/2".parse().unwrap()).unwrap();
        let w = Window::around_anchor(&f, 1);
        assert!(
            check_module_axiom(&f, &w, 2, Exec::Sequential)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn perturbed_e_term_breaks_the_axiom() {
        let f = TensorModule::from_spec(KWeightModule::polynomial(2), &"ext:1".parse().unwrap())
            .unwrap()
            .with_e_term_shift(Rational::one());
        let w = Window::materialize(&f, WeightBox::new(vec![1, 1], 1));
        assert!(
            !check_module_axiom(&f, &w, 2, Exec::Sequential)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn function_brackets() {
        let x = TensorGen::Field(WittGen::new(MultiIndex::from_slice(&[1, 0]), 0));
        let y = TensorGen::Func(MultiIndex::from_slice(&[2, 1]));
        assert_eq!(
            x.bracket(&y),
            vec![(
                TensorGen::Func(MultiIndex::from_slice(&[2, 1])),
                Rational::from(2)
            )]
        );
        assert_eq!(y.bracket(&x)[0].1, Rational::from(-2));
        assert!(y.bracket(&y).is_empty());
    }
}
