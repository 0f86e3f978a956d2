//! Explicit betweenness-uniform blow-up families and the P4 inequality check.

use serde::{Deserialize, Serialize};

use crate::betweenness::betweenness_exact;
use crate::blowup::{blow_up, BlowupSpec, PartDescriptor};
use crate::graph::{generate, GraphKind};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("part sizes must be positive")]
    NonPositiveSize,
    #[error("a star needs at least one leaf")]
    EmptyStar,
}

fn positive(sizes: &[usize]) -> Result<(), ConstructionError> {
    if sizes.contains(&0) {
        Err(ConstructionError::NonPositiveSize)
    } else {
        Ok(())
    }
}

/// `P_2[K_m, K_m]`, which is `K_{2m}`.
pub fn p2_clique_spec(m: usize) -> Result<BlowupSpec, ConstructionError> {
    positive(&[m])?;
    let base = generate(GraphKind::Path, 2).expect("P_2");
    Ok(BlowupSpec::new(base, vec![PartDescriptor::clique(m); 2]).expect("valid P_2 blow-up"))
}

/// `P_3[I_a, I_{a+b}, I_b]`.
pub fn p3_independent_spec(a: usize, b: usize) -> Result<BlowupSpec, ConstructionError> {
    positive(&[a, b])?;
    let base = generate(GraphKind::Path, 3).expect("P_3");
    let parts = vec![
        PartDescriptor::independent(a),
        PartDescriptor::independent(a + b),
        PartDescriptor::independent(b),
    ];
    Ok(BlowupSpec::new(base, parts).expect("valid P_3 blow-up"))
}

/// `S_k[I_{s_1}, ..., I_{s_k}, I_{s_1 + ... + s_k}]`; the centre is the last base vertex.
pub fn star_spec(sizes: &[usize]) -> Result<BlowupSpec, ConstructionError> {
    if sizes.is_empty() {
        return Err(ConstructionError::EmptyStar);
    }
    positive(sizes)?;
    let base = generate(GraphKind::Star, sizes.len()).expect("star with at least one leaf");
    let mut parts: Vec<PartDescriptor> = sizes.iter().map(|&s| PartDescriptor::independent(s)).collect();
    parts.push(PartDescriptor::independent(sizes.iter().sum()));
    Ok(BlowupSpec::new(base, parts).expect("valid star blow-up"))
}

/// Sizes for `P_4[K_a, I_b, I_c, K_d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct P4SizeTuple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl P4SizeTuple {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Self, ConstructionError> {
        if [a, b, c, d].contains(&0) {
            return Err(ConstructionError::NonPositiveSize);
        }
        Ok(P4SizeTuple { a, b, c, d })
    }

    pub fn spec(&self) -> BlowupSpec {
        let base = generate(GraphKind::Path, 4).expect("P_4");
        let parts = vec![
            PartDescriptor::clique(self.a as usize),
            PartDescriptor::independent(self.b as usize),
            PartDescriptor::independent(self.c as usize),
            PartDescriptor::clique(self.d as usize),
        ];
        BlowupSpec::new(base, parts).expect("valid P_4 blow-up")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P4InfeasibilityReport {
    pub tuple: P4SizeTuple,
    /// `C(b,2)/(a+c) >= a(c+d)/b + C(c,2)/(b+d)`.
    pub ineq1_holds: bool,
    /// `C(c,2)/(b+d) >= d(a+b)/c + C(b,2)/(a+c)`.
    pub ineq2_holds: bool,
    /// `ac(c+d) + bd(a+b)`.
    pub combined_value: u128,
    /// `ac(c+d) + bd(a+b) > 0`, i.e. `0 >= ac(c+d) + bd(a+b)` fails.
    pub combined_violated: bool,
}

impl P4InfeasibilityReport {
    /// Both necessary inequalities at once; never true for positive sizes.
    pub fn both_hold(&self) -> bool {
        self.ineq1_holds && self.ineq2_holds
    }
}

fn choose2(x: u128) -> u128 {
    x * x.saturating_sub(1) / 2
}

/// Evaluates the two uniformity inequalities for `P_4[K_a, I_b, I_c, K_d]`
/// exactly in integers (each side multiplied through by its positive
/// denominators) together with the combined condition.
pub fn p4_infeasibility_check(t: P4SizeTuple) -> P4InfeasibilityReport {
    let (a, b, c, d) = (t.a as u128, t.b as u128, t.c as u128, t.d as u128);
    // C(b,2)/(a+c) >= a(c+d)/b + C(c,2)/(b+d), times (a+c)·b·(b+d).
    let ineq1_holds = choose2(b) * b * (b + d) >= a * (c + d) * (a + c) * (b + d) + choose2(c) * (a + c) * b;
    // C(c,2)/(b+d) >= d(a+b)/c + C(b,2)/(a+c), times (b+d)·c·(a+c).
    let ineq2_holds = choose2(c) * c * (a + c) >= d * (a + b) * (b + d) * (a + c) + choose2(b) * (b + d) * c;
    let combined_value = a * c * (c + d) + b * d * (a + b);
    P4InfeasibilityReport {
        tuple: t,
        ineq1_holds,
        ineq2_holds,
        combined_value,
        combined_violated: combined_value > 0,
    }
}

/// Uniformity verdict for a constructed spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCheck {
    pub order: usize,
    pub uniform: bool,
    pub common: Option<Rational>,
    pub two_connected: bool,
}

pub fn check_construction(spec: &BlowupSpec) -> ConstructionCheck {
    let bg = blow_up(spec);
    let verdict = betweenness_exact(bg.graph()).verdict();
    ConstructionCheck {
        order: bg.graph().order(),
        uniform: verdict.uniform,
        common: verdict.common,
        two_connected: bg.graph().is_two_connected(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::betweenness_oracle;

    #[test]
    fn p2_family() {
        let k2 = check_construction(&p2_clique_spec(1).unwrap());
        assert_eq!((k2.order, k2.uniform, k2.common), (2, true, Some(Rational::zero())));
        assert!(check_construction(&p2_clique_spec(3).unwrap()).uniform);
        let k10 = blow_up(&p2_clique_spec(5).unwrap());
        assert!(k10.graph().is_complete());
        assert_eq!(betweenness_oracle(k10.graph()).common_value(), Some(&Rational::zero()));
        assert_eq!(p2_clique_spec(0), Err(ConstructionError::NonPositiveSize));
    }

    #[test]
    fn p3_family() {
        let c4 = check_construction(&p3_independent_spec(1, 1).unwrap());
        assert_eq!((c4.order, c4.uniform), (4, true));
        let big = check_construction(&p3_independent_spec(2, 3).unwrap());
        assert_eq!((big.order, big.uniform), (10, true));
        assert_eq!(p3_independent_spec(0, 2), Err(ConstructionError::NonPositiveSize));
    }

    #[test]
    fn p3_wrong_middle_is_not_uniform() {
        let base = generate(GraphKind::Path, 3).unwrap();
        let spec = BlowupSpec::new(
            base,
            vec![
                PartDescriptor::independent(1),
                PartDescriptor::independent(3),
                PartDescriptor::independent(1),
            ],
        )
        .unwrap();
        assert!(!check_construction(&spec).uniform);
    }

    #[test]
    fn star_family() {
        let s = star_spec(&[1, 1]).unwrap();
        assert_eq!(s.part(2), &PartDescriptor::independent(2));
        assert!(check_construction(&s).uniform);
        assert!(check_construction(&star_spec(&[1, 2, 3]).unwrap()).uniform);
        assert_eq!(star_spec(&[]), Err(ConstructionError::EmptyStar));
        assert_eq!(star_spec(&[1, 0]), Err(ConstructionError::NonPositiveSize));

        let base = generate(GraphKind::Star, 3).unwrap();
        let mut parts = vec![PartDescriptor::independent(2); 3];
        parts.push(PartDescriptor::independent(5));
        let wrong = BlowupSpec::new(base, parts).unwrap();
        assert!(!check_construction(&wrong).uniform);
    }

    #[test]
    fn p4_check_examples() {
        let r = p4_infeasibility_check(P4SizeTuple::new(1, 1, 1, 1).unwrap());
        assert_eq!(r.combined_value, 4);
        assert!(r.combined_violated && !r.both_hold());
        let r = p4_infeasibility_check(P4SizeTuple::new(2, 5, 5, 2).unwrap());
        assert!(r.combined_violated && !r.both_hold());
        let r = p4_infeasibility_check(P4SizeTuple::new(1, 10, 10, 1).unwrap());
        assert!(r.combined_violated && !r.both_hold());
        assert!(P4SizeTuple::new(0, 1, 1, 1).is_err());
    }

    #[test]
    fn p4_inequalities_match_rational_evaluation() {
        for (a, b, c, d) in [(1, 1, 1, 1), (2, 5, 5, 2), (1, 10, 3, 1), (3, 9, 1, 2), (1, 20, 2, 1)] {
            let t = P4SizeTuple::new(a, b, c, d).unwrap();
            let q = |n: u64, m: u64| Rational::new(n as i64, m as i64);
            let cb = b * (b - 1) / 2;
            let cc = c * (c - 1) / 2;
            let lhs1 = q(cb, a + c);
            let rhs1 = q(a * (c + d), b) + q(cc, b + d);
            let lhs2 = q(cc, b + d);
            let rhs2 = q(d * (a + b), c) + q(cb, a + c);
            let r = p4_infeasibility_check(t);
            assert_eq!(r.ineq1_holds, lhs1 >= rhs1, "{t:?}");
            assert_eq!(r.ineq2_holds, lhs2 >= rhs2, "{t:?}");
        }
    }
}
