//! Exact verification of operator identities in `U(W_n^+)` and `A_n^+ · U(W_n^+)`.
//!
//! Each check builds both sides, normal-orders them and reports the number
//! of monomials left in the difference.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::omega::{omega_pairs, order_pairs};
use super::pbw::straighten;
use super::{build_omega, NormalOrderer, OmegaSpec, UElem, UbarElem, UeaError};
use crate::exact::Rational;
use crate::witt::{build_x, MultiIndex, WittGen};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub indices: Value,
    pub residue_term_count: usize,
    pub pass: bool,
}

impl IdentityReport {
    fn new(identity: &str, indices: Value, residue_term_count: usize) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            indices,
            residue_term_count,
            pass: residue_term_count == 0,
        }
    }
}

fn sign(i: u32) -> Rational {
    if i.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn binom(m: u32, i: u32) -> Rational {
    Rational::binomial(u64::from(m), u64::from(i))
}

/// `sum_{beta <= alpha} C(alpha, beta) t^beta · X_{alpha-beta,i} = t^alpha d_i`.
pub fn check_basis_change(alpha: &MultiIndex, i: usize) -> IdentityReport {
    let n = alpha.rank();
    let mut lhs = UbarElem::zero(n);
    for beta in alpha.lower_set() {
        let rest = alpha.checked_sub(&beta).expect("beta <= alpha");
        let term = UbarElem::from_awlie(&build_x(&rest, i)).times_function(&beta);
        lhs = lhs.plus(&term.scaled(&alpha.binomial(&beta)));
    }
    let rhs = UbarElem::generator(WittGen::new(alpha.clone(), i));
    IdentityReport::new(
        "basis_change",
        json!({"alpha": alpha, "i": i + 1}),
        lhs.minus(&rhs).len(),
    )
}

/// `([x, d_j], [x, t^gamma])` in `A_n^+ · U(W_n^+)`.
pub fn centralizer_residues(
    x: &UbarElem,
    j: usize,
    gamma: &MultiIndex,
    orderer: &NormalOrderer,
) -> Result<(UbarElem, UbarElem), UeaError> {
    let n = x.rank();
    let d = UbarElem::generator(WittGen::partial(n, j));
    let t = UbarElem::function(gamma.clone());
    Ok((
        orderer.commutator_ubar(x, &d)?,
        orderer.commutator_ubar(x, &t)?,
    ))
}

/// `X_{alpha,i}` commutes with `d_j` and with `t^gamma`.
pub fn check_t_centralizer(
    alpha: &MultiIndex,
    i: usize,
    j: usize,
    gamma: &MultiIndex,
    orderer: &NormalOrderer,
) -> Result<IdentityReport, UeaError> {
    let x = UbarElem::from_awlie(&build_x(alpha, i));
    let (r1, r2) = centralizer_residues(&x, j, gamma, orderer)?;
    Ok(IdentityReport::new(
        "t_centralizer",
        json!({"alpha": alpha, "i": i + 1, "j": j + 1, "gamma": gamma}),
        r1.len() + r2.len(),
    ))
}

/// `[X_{alpha,i}, X_{beta,j}]` equals the `X`-image of `[t^alpha d_i, t^beta d_j]`.
pub fn check_pi2_homomorphism(
    alpha: &MultiIndex,
    i: usize,
    beta: &MultiIndex,
    j: usize,
    orderer: &NormalOrderer,
) -> Result<IdentityReport, UeaError> {
    let xa = UbarElem::from_awlie(&build_x(alpha, i));
    let xb = UbarElem::from_awlie(&build_x(beta, j));
    let lhs = orderer.commutator_ubar(&xa, &xb)?;
    let mut rhs = UbarElem::zero(alpha.rank());
    for (g, c) in WittGen::new(alpha.clone(), i).bracket(&WittGen::new(beta.clone(), j)) {
        rhs = rhs.plus(&UbarElem::from_awlie(&build_x(&g.alpha, g.dir)).scaled(&c));
    }
    Ok(IdentityReport::new(
        "pi2_homomorphism",
        json!({"alpha": alpha, "i": i + 1, "beta": beta, "j": j + 1}),
        lhs.minus(&rhs).len(),
    ))
}

fn omega1(k: u32, s: u32, m: u32, o: &NormalOrderer) -> Result<UElem, UeaError> {
    build_omega(&OmegaSpec::Omega1 { k, s, m }, o)
}

fn big_omega(k: i64, s: i64, m: u32, o: &NormalOrderer) -> Result<UElem, UeaError> {
    build_omega(&OmegaSpec::BigOmega { k, s, m }, o)
}

/// `omega^{(m+1)}_{k,s} = omega^{(m)}_{k+1,s} - omega^{(m)}_{k,s+1}`.
pub fn check_omega_recursion(
    m: u32,
    k: u32,
    s: u32,
    o: &NormalOrderer,
) -> Result<IdentityReport, UeaError> {
    let lhs = omega1(k, s, m + 1, o)?;
    let rhs = omega1(k + 1, s, m, o)?.minus(&omega1(k, s + 1, m, o)?);
    Ok(IdentityReport::new(
        "omega_recursion",
        json!({"m": m, "k": k, "s": s}),
        lhs.minus(&rhs).len(),
    ))
}

/// `Omega^{(m+1)}_{k,s} = Omega^{(m)}_{k,s} - Omega^{(m)}_{k-1,s+1}`; needs `k >= m`, `s >= -1`.
pub fn check_big_omega_recursion(
    m: u32,
    k: i64,
    s: i64,
    o: &NormalOrderer,
) -> Result<IdentityReport, UeaError> {
    let lhs = big_omega(k, s, m + 1, o)?;
    let rhs = big_omega(k, s, m, o)?.minus(&big_omega(k - 1, s + 1, m, o)?);
    Ok(IdentityReport::new(
        "big_omega_recursion",
        json!({"m": m, "k": k, "s": s}),
        lhs.minus(&rhs).len(),
    ))
}

/// `omega^{(m)}_{k,s} = Omega^{(m)}_{m+k-1,s-1}`.
pub fn check_omega_identification(
    m: u32,
    k: u32,
    s: u32,
    o: &NormalOrderer,
) -> Result<IdentityReport, UeaError> {
    let lhs = omega1(k, s, m, o)?;
    let rhs = big_omega(i64::from(m) + i64::from(k) - 1, i64::from(s) - 1, m, o)?;
    Ok(IdentityReport::new(
        "omega_identification",
        json!({"m": m, "k": k, "s": s}),
        lhs.minus(&rhs).len(),
    ))
}

/// Left side of the quartic identity minus `rhs_coeff · omega^{(4m)}_{k,s}`.
pub fn big_omega_identity_residue(
    m: u32,
    k: u32,
    s: u32,
    rhs_coeff: &Rational,
    o: &NormalOrderer,
) -> Result<UElem, UeaError> {
    let mut input = Vec::new();
    let mut anti = |c: &Rational, a: &UElem, b: &UElem| {
        for (wa, ca) in a.terms().iter() {
            for (wb, cb) in b.terms().iter() {
                let coeff = c * &(ca * cb);
                let mut ab = wa.factors().to_vec();
                ab.extend_from_slice(wb.factors());
                let mut ba = wb.factors().to_vec();
                ba.extend_from_slice(wa.factors());
                input.push((((), ab), coeff.clone()));
                input.push((((), ba), coeff));
            }
        }
    };
    for i in 0..=m {
        for j in 0..=m {
            let c = sign(i + j) * binom(m, i) * binom(m, j);
            let a1 = omega1(k + 1 + m - i, s + 1 + m - j, m, o)?;
            let b1 = omega1(i, j, m, o)?;
            anti(&c, &a1, &b1);
            let a2 = omega1(k + 1 + m - i, m - j, m, o)?;
            let b2 = omega1(s + 1 + i, j, m, o)?;
            anti(&-c, &a2, &b2);
        }
    }
    let rhs = omega1(k, s, 4 * m, o)?.scaled(rhs_coeff);
    for (w, c) in rhs.terms().iter() {
        input.push((((), w.factors().to_vec()), -c.clone()));
    }
    let terms = straighten(input, o.budget)?;
    Ok(UElem::from_normal_terms(
        1,
        terms.map_keys(|(_, w)| w.clone()),
    ))
}

/// The quartic anticommutator identity with right side `(k+1)(s+1) omega^{(4m)}_{k,s}`.
pub fn check_big_omega_identity(
    m: u32,
    k: u32,
    s: u32,
    o: &NormalOrderer,
) -> Result<IdentityReport, UeaError> {
    let coeff = Rational::from((k + 1) * (s + 1));
    let r = big_omega_identity_residue(m, k, s, &coeff, o)?;
    Ok(IdentityReport::new(
        "big_omega_identity",
        json!({"m": m, "k": k, "s": s}),
        r.len(),
    ))
}

/// Indices for the steps that propagate `omega`-annihilators from one
/// direction to all directions. Directions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagationIndices {
    pub m: u32,
    pub j: usize,
    pub l: usize,
    pub p: usize,
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub gamma: MultiIndex,
    pub k: u32,
    pub s: u32,
}

impl PropagationIndices {
    fn to_json(&self) -> Value {
        json!({
            "m": self.m, "j": self.j + 1, "l": self.l + 1, "p": self.p + 1,
            "alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
            "k": self.k, "s": self.s,
        })
    }
}

struct Ctx<'a> {
    n: usize,
    o: &'a NormalOrderer,
}

impl Ctx<'_> {
    fn unit(&self, j: usize, k: i64) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[j] = k;
        v
    }

    fn shift(&self, a: &MultiIndex, j: usize, k: i64) -> Option<MultiIndex> {
        a.offset(&self.unit(j, k))
    }

    fn e(&self, j: usize, k: u32) -> MultiIndex {
        MultiIndex::zero(self.n).plus_unit(j, k)
    }

    fn gen(&self, a: Option<MultiIndex>, dir: usize) -> Option<WittGen> {
        a.map(|a| WittGen::new(a, dir))
    }

    fn omega(
        &self,
        a: &MultiIndex,
        b: &MultiIndex,
        m: u32,
        j: usize,
        l: usize,
        p: usize,
    ) -> Result<UElem, UeaError> {
        order_pairs(self.n, omega_pairs(a, b, m, j, l, p), self.o)
    }

    /// `acc += c · omega`, skipping zero coefficients before indices are needed.
    #[allow(clippy::too_many_arguments)]
    fn add_omega(
        &self,
        acc: &mut UElem,
        c: Rational,
        a: Option<MultiIndex>,
        b: Option<MultiIndex>,
        m: u32,
        (j, l, p): (usize, usize, usize),
    ) -> Result<(), UeaError> {
        if c.is_zero() {
            return Ok(());
        }
        let (Some(a), Some(b)) = (a, b) else {
            return Err(UeaError::NegativeExponent(format!(
                "omega index with nonzero coefficient {c}"
            )));
        };
        acc.add_scaled(&self.omega(&a, &b, m, j, l, p)?, &c);
        Ok(())
    }

    fn pairs(
        &self,
        list: Vec<(Rational, Option<WittGen>, Option<WittGen>)>,
    ) -> Result<UElem, UeaError> {
        let mut out = Vec::with_capacity(list.len());
        for (c, a, b) in list {
            if c.is_zero() {
                continue;
            }
            match (a, b) {
                (Some(a), Some(b)) => out.push((c, a, b)),
                _ => {
                    return Err(UeaError::NegativeExponent(format!(
                        "term with coefficient {c}"
                    )))
                }
            }
        }
        order_pairs(self.n, out, self.o)
    }

    fn bracket_gen(&self, g: WittGen, x: &UElem) -> Result<UElem, UeaError> {
        self.o.commutator(&UElem::generator(g), x)
    }

    /// `[t^alpha d_j, omega^{m,jjj}_{k e_j, s e_j}]`.
    fn f(&self, m: u32, j: usize, alpha: &MultiIndex, k: u32, s: u32) -> Result<UElem, UeaError> {
        let w = self.omega(&self.e(j, k), &self.e(j, s), m, j, j, j)?;
        self.bracket_gen(WittGen::new(alpha.clone(), j), &w)
    }

    /// `[t^beta d_j, omega^{m+2,jjj}_{alpha, s e_j}]`.
    fn big_f(
        &self,
        m: u32,
        j: usize,
        beta: &MultiIndex,
        alpha: &MultiIndex,
        s: u32,
    ) -> Result<UElem, UeaError> {
        let w = self.omega(alpha, &self.e(j, s), m + 2, j, j, j)?;
        self.bracket_gen(WittGen::new(beta.clone(), j), &w)
    }

    fn g(&self, m: u32, j: usize, alpha: &MultiIndex, k: u32, s: u32) -> Result<UElem, UeaError> {
        let a1 = alpha.plus_unit(j, 1);
        let a2 = alpha.plus_unit(j, 2);
        let first = self
            .f(m, j, alpha, k + 1, s + 1)?
            .minus(&self.f(m, j, &a1, k + 1, s)?);
        let second = self
            .f(m, j, &a1, k, s + 1)?
            .minus(&self.f(m, j, &a2, k, s)?);
        Ok(first.minus(&second))
    }

    /// `gamma_j (omega^{M,jlj}_{alpha+gamma-e_j,beta} + omega^{M,jjl}_{alpha,beta+gamma-e_j})`.
    fn f3(
        &self,
        big_m: u32,
        idx: &PropagationIndices,
        beta: &MultiIndex,
        gamma: &MultiIndex,
    ) -> Result<UElem, UeaError> {
        let (j, l) = (idx.j, idx.l);
        let gj = Rational::from(gamma.get(j));
        let mut acc = UElem::zero(self.n);
        let ag = idx.alpha.add(gamma);
        let bg = beta.add(gamma);
        self.add_omega(
            &mut acc,
            gj.clone(),
            self.shift(&ag, j, -1),
            Some(beta.clone()),
            big_m,
            (j, l, j),
        )?;
        self.add_omega(
            &mut acc,
            gj,
            Some(idx.alpha.clone()),
            self.shift(&bg, j, -1),
            big_m,
            (j, j, l),
        )?;
        Ok(acc)
    }
}

/// Commutator `[t^alpha d_j, omega^{m,jjj}_{k e_j, s e_j}]` minus its two-sum
/// expansion, with the second sum multiplied by `second_sign` (1 for the
/// true identity).
pub fn propagation_expansion_residue(
    idx: &PropagationIndices,
    second_sign: &Rational,
    o: &NormalOrderer,
) -> Result<UElem, UeaError> {
    let cx = Ctx {
        n: idx.alpha.rank(),
        o,
    };
    let (m, j, k, s) = (idx.m, idx.j, i64::from(idx.k), i64::from(idx.s));
    let aj = i64::from(idx.alpha.get(j));
    let lhs = cx.f(m, j, &idx.alpha, idx.k, idx.s)?;
    let mut list = Vec::new();
    for i in 0..=m {
        let c = sign(i) * binom(m, i);
        let ii = i64::from(i);
        let a = k + i64::from(m) - ii;
        list.push((
            &c * &Rational::from(a - aj),
            cx.gen(cx.shift(&idx.alpha, j, a - 1), j),
            cx.gen(Some(cx.e(j, (s + ii) as u32)), j),
        ));
        list.push((
            &c * &(second_sign * &Rational::from(s + ii - aj)),
            cx.gen(Some(cx.e(j, a as u32)), j),
            cx.gen(cx.shift(&idx.alpha, j, s + ii - 1), j),
        ));
    }
    Ok(lhs.minus(&cx.pairs(list)?))
}

/// Every algebraic step of the direction-propagation argument, as exact
/// identities. Steps needing `l != j` (or `p != j`) are skipped otherwise.
pub fn check_propagation_steps(
    idx: &PropagationIndices,
    o: &NormalOrderer,
) -> Result<Vec<IdentityReport>, UeaError> {
    let n = idx.alpha.rank();
    if idx.beta.rank() != n || idx.gamma.rank() != n || idx.j >= n || idx.l >= n || idx.p >= n {
        return Err(UeaError::BadIndex(format!("{idx:?}")));
    }
    let cx = Ctx { n, o };
    let (m, j, l, p) = (idx.m, idx.j, idx.l, idx.p);
    let (alpha, beta, gamma) = (&idx.alpha, &idx.beta, &idx.gamma);
    let (k, s) = (idx.k, idx.s);
    let two = Rational::from(2);
    let half = Rational::new(1, 2);
    let ind = idx.to_json();
    let mut reports = Vec::new();

    // (i) single-direction commutator expansion
    let r = propagation_expansion_residue(idx, &Rational::one(), o)?;
    reports.push(IdentityReport::new(
        "propagation.commutator_expansion",
        ind.clone(),
        r.len(),
    ));

    // (i') the same expansion for the shifted element of order m+2
    {
        let lhs = cx.big_f(m, j, beta, alpha, s)?;
        let (aj, bj, si) = (
            i64::from(alpha.get(j)),
            i64::from(beta.get(j)),
            i64::from(s),
        );
        let ab = alpha.add(beta);
        let mut list = Vec::new();
        for i in 0..=m + 2 {
            let c = sign(i) * binom(m + 2, i);
            let ii = i64::from(i);
            let mm = i64::from(m);
            list.push((
                &c * &Rational::from(aj + mm + 2 - bj - ii),
                cx.gen(cx.shift(&ab, j, mm + 1 - ii), j),
                cx.gen(Some(cx.e(j, (si + ii) as u32)), j),
            ));
            list.push((
                &c * &Rational::from(si - bj + ii),
                cx.gen(cx.shift(alpha, j, mm + 2 - ii), j),
                cx.gen(cx.shift(beta, j, si + ii - 1), j),
            ));
        }
        let r = lhs.minus(&cx.pairs(list)?);
        reports.push(IdentityReport::new(
            "propagation.shifted_expansion",
            ind.clone(),
            r.len(),
        ));
    }

    // (ii) the four-fold difference of commutators
    {
        let lhs = cx.g(m, j, alpha, k, s)?;
        let mut rhs = UElem::zero(n);
        cx.add_omega(
            &mut rhs,
            two.clone(),
            Some(cx.e(j, k)),
            Some(alpha.plus_unit(j, s)),
            m + 1,
            (j, j, j),
        )?;
        cx.add_omega(
            &mut rhs,
            -two.clone(),
            Some(alpha.plus_unit(j, k)),
            Some(cx.e(j, s)),
            m + 1,
            (j, j, j),
        )?;
        reports.push(IdentityReport::new(
            "propagation.difference",
            ind.clone(),
            lhs.minus(&rhs).len(),
        ));

        let lhs = cx
            .g(m, j, alpha, k, s + 1)?
            .scaled(&half)
            .minus(&cx.g(m, j, &alpha.plus_unit(j, 1), k, s)?.scaled(&half));
        let rhs = cx.omega(&alpha.plus_unit(j, k), &cx.e(j, s), m + 2, j, j, j)?;
        reports.push(IdentityReport::new(
            "propagation.second_difference",
            ind.clone(),
            lhs.minus(&rhs).len(),
        ));

        let a1 = alpha.plus_unit(j, 1);
        let b1 = beta.plus_unit(j, 1);
        let b2 = beta.plus_unit(j, 2);
        let lhs = cx
            .big_f(m, j, beta, &a1, s + 1)?
            .minus(&cx.big_f(m, j, &b1, &a1, s)?)
            .minus(
                &cx.big_f(m, j, &b1, alpha, s + 1)?
                    .minus(&cx.big_f(m, j, &b2, alpha, s)?),
            );
        let mut rhs = UElem::zero(n);
        cx.add_omega(
            &mut rhs,
            two.clone(),
            Some(alpha.clone()),
            Some(beta.plus_unit(j, s)),
            m + 3,
            (j, j, j),
        )?;
        cx.add_omega(
            &mut rhs,
            -two.clone(),
            Some(alpha.add(beta)),
            Some(cx.e(j, s)),
            m + 3,
            (j, j, j),
        )?;
        reports.push(IdentityReport::new(
            "propagation.full_single_direction",
            ind.clone(),
            lhs.minus(&rhs).len(),
        ));
    }

    if l != j {
        // (iii) bracket with a transverse generator
        let big_m = m + 3;
        let w = cx.omega(alpha, beta, big_m, j, j, j)?;
        let lhs = cx.bracket_gen(WittGen::new(gamma.clone(), l), &w)?;
        let ag = alpha.add(gamma);
        let bg = beta.add(gamma);
        let gj = Rational::from(gamma.get(j));
        let mut rhs = UElem::zero(n);
        cx.add_omega(
            &mut rhs,
            Rational::from(alpha.get(l)),
            cx.shift(&ag, l, -1),
            Some(beta.clone()),
            big_m,
            (j, j, j),
        )?;
        cx.add_omega(
            &mut rhs,
            Rational::from(beta.get(l)),
            Some(alpha.clone()),
            cx.shift(&bg, l, -1),
            big_m,
            (j, j, j),
        )?;
        cx.add_omega(
            &mut rhs,
            -gj.clone(),
            cx.shift(&ag, j, -1),
            Some(beta.clone()),
            big_m,
            (j, l, j),
        )?;
        cx.add_omega(
            &mut rhs,
            -gj.clone(),
            Some(alpha.clone()),
            cx.shift(&bg, j, -1),
            big_m,
            (j, j, l),
        )?;
        reports.push(IdentityReport::new(
            "propagation.transverse_bracket",
            ind.clone(),
            lhs.minus(&rhs).len(),
        ));

        let lhs = cx
            .f3(big_m, idx, &beta.plus_unit(j, 1), gamma)?
            .scaled(&(&gj + &Rational::one()))
            .minus(&cx.f3(big_m, idx, beta, &gamma.plus_unit(j, 1))?.scaled(&gj));
        let mut rhs = UElem::zero(n);
        let c = -(&gj * &(&gj + &Rational::one()));
        cx.add_omega(
            &mut rhs,
            c,
            cx.shift(&ag, j, -1),
            Some(beta.clone()),
            big_m + 1,
            (j, l, j),
        )?;
        reports.push(IdentityReport::new(
            "propagation.transverse_combination",
            ind.clone(),
            lhs.minus(&rhs).len(),
        ));

        if p != j {
            let big_m = m + 4;
            let w = cx.omega(alpha, beta, big_m, j, l, j)?;
            let lhs = cx.bracket_gen(WittGen::new(gamma.clone(), p), &w)?;
            let mut rhs = UElem::zero(n);
            cx.add_omega(
                &mut rhs,
                Rational::from(alpha.get(p)),
                cx.shift(&ag, p, -1),
                Some(beta.clone()),
                big_m,
                (j, l, j),
            )?;
            cx.add_omega(
                &mut rhs,
                -Rational::from(gamma.get(l)),
                cx.shift(&ag, l, -1),
                Some(beta.clone()),
                big_m,
                (j, p, j),
            )?;
            cx.add_omega(
                &mut rhs,
                Rational::from(beta.get(p)),
                Some(alpha.clone()),
                cx.shift(&bg, p, -1),
                big_m,
                (j, l, j),
            )?;
            cx.add_omega(
                &mut rhs,
                -gj,
                Some(alpha.clone()),
                cx.shift(&bg, j, -1),
                big_m,
                (j, l, p),
            )?;
            reports.push(IdentityReport::new(
                "propagation.mixed_bracket",
                ind.clone(),
                lhs.minus(&rhs).len(),
            ));
        }
    }

    // (iv) multi-index recursion
    let lhs = cx
        .omega(&alpha.plus_unit(j, 1), beta, m, j, l, p)?
        .minus(&cx.omega(alpha, &beta.plus_unit(j, 1), m, j, l, p)?);
    let rhs = cx.omega(alpha, beta, m + 1, j, l, p)?;
    reports.push(IdentityReport::new(
        "propagation.recursion",
        ind,
        lhs.minus(&rhs).len(),
    ));

    Ok(reports)
}
