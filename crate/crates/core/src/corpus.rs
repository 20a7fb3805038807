//! Builtin algebras and the (algebra, seminorm) pairings used by the
//! pipeline and the CLI `corpus` command.

use crate::algebra::{FiniteDimRealAlgebra, StructureConstant};
use crate::characters::Character;
use crate::pipeline::{BranchPolicy, PipelineConfig, Verdict};
use crate::quaternion::Quaternion;
use crate::seminorm::SeminormSpec;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn reals() -> FiniteDimRealAlgebra {
    FiniteDimRealAlgebra::new(
        "R",
        labels(&["1"]),
        vec![StructureConstant::new(0, 0, 0, 1.0)],
        Some(vec![1.0]),
    )
    .expect("R is associative")
}

/// C as a 2-dimensional real algebra with basis 1, i.
pub fn complexes() -> FiniteDimRealAlgebra {
    FiniteDimRealAlgebra::new(
        "C",
        labels(&["1", "i"]),
        vec![
            StructureConstant::new(0, 0, 0, 1.0),
            StructureConstant::new(0, 1, 1, 1.0),
            StructureConstant::new(1, 0, 1, 1.0),
            StructureConstant::new(1, 1, 0, -1.0),
        ],
        None,
    )
    .expect("C is associative")
}

/// H with basis 1, i, j, k and the Hamilton table.
pub fn quaternions() -> FiniteDimRealAlgebra {
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut table = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        for (j, q) in basis.iter().enumerate() {
            let prod = (*p * *q).to_array();
            for (k, &v) in prod.iter().enumerate() {
                if v != 0.0 {
                    table.push(StructureConstant::new(i, j, k, v));
                }
            }
        }
    }
    FiniteDimRealAlgebra::new("H", labels(&["1", "i", "j", "k"]), table, None)
        .expect("H is associative")
}

/// 2x2 real matrices in the basis E11, E12, E21, E22.
pub fn m2_reals() -> FiniteDimRealAlgebra {
    let mut table = Vec::new();
    // E_ab E_cd = delta_bc E_ad, index of E_ab is 2a + b
    for a in 0..2 {
        for b in 0..2 {
            for d in 0..2 {
                table.push(StructureConstant::new(2 * a + b, 2 * b + d, 2 * a + d, 1.0));
            }
        }
    }
    FiniteDimRealAlgebra::new("M2(R)", labels(&["E11", "E12", "E21", "E22"]), table, None)
        .expect("M2(R) is associative")
}

/// One-dimensional algebra with `b * b = 0`; not unital.
pub fn null_line() -> FiniteDimRealAlgebra {
    FiniteDimRealAlgebra::new("N", labels(&["b"]), Vec::new(), None).expect("null algebra")
}

/// Block-diagonal direct sum. Component `c` label `l` becomes `l_c`.
pub fn direct_sum(parts: &[FiniteDimRealAlgebra]) -> FiniteDimRealAlgebra {
    let mut table = Vec::new();
    let mut names = Vec::new();
    let mut all_labels = Vec::new();
    let mut unit = Some(Vec::new());
    let mut offset = 0;
    for (c, part) in parts.iter().enumerate() {
        table.extend(part.table().iter().map(|t| {
            StructureConstant::new(t.i + offset, t.j + offset, t.k + offset, t.value)
        }));
        names.push(part.name().to_string());
        all_labels.extend(part.labels().iter().map(|l| format!("{l}_{c}")));
        unit = match (unit, part.unit()) {
            (Some(mut u), Some(pu)) => {
                u.extend_from_slice(pu);
                Some(u)
            }
            _ => None,
        };
        offset += part.dim();
    }
    FiniteDimRealAlgebra::new(names.join("⊕"), all_labels, table, unit)
        .expect("direct sum of associative algebras is associative")
}

/// H-valued functions on an `points`-element discrete space, i.e. `H^points`.
pub fn function_algebra_h(points: usize) -> FiniteDimRealAlgebra {
    let parts: Vec<_> = (0..points).map(|_| quaternions()).collect();
    let mut alg = direct_sum(&parts);
    alg = FiniteDimRealAlgebra::new(
        format!("C(X,H) |X|={points}"),
        alg.labels().to_vec(),
        alg.table().to_vec(),
        alg.unit().map(|u| u.to_vec()),
    )
    .expect("already validated");
    alg
}

/// `R + R + N` with `N` a null line: non-unital, three-dimensional, and `N`
/// is a one-dimensional two-sided ideal with unital quotient `R + R`.
pub fn extended_null() -> FiniteDimRealAlgebra {
    direct_sum(&[reals(), reals(), null_line()])
}

/// Every builtin algebra.
pub fn all_algebras() -> Vec<FiniteDimRealAlgebra> {
    vec![
        reals(),
        complexes(),
        quaternions(),
        m2_reals(),
        null_line(),
        direct_sum(&[reals(), reals()]),
        direct_sum(&[reals(), reals(), complexes()]),
        direct_sum(&[quaternions(), complexes()]),
        function_algebra_h(2),
        extended_null(),
    ]
}

pub fn unital_algebras() -> Vec<FiniteDimRealAlgebra> {
    all_algebras().into_iter().filter(|a| a.is_unital()).collect()
}

/// `x -> q x q^-1` on an H summand starting at coordinate `offset`, zero on
/// the other summands.
pub fn conjugation_character(alg: &FiniteDimRealAlgebra, offset: usize, q: Quaternion) -> Character {
    let q = q.scale(1.0 / q.norm());
    let mut images = vec![Quaternion::ZERO; alg.dim()];
    for (i, e) in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K]
        .into_iter()
        .enumerate()
    {
        images[offset + i] = q * e * q.conj();
    }
    Character::new(alg, images).expect("offset within range")
}

/// `a + b i -> a + b i` on a C summand starting at coordinate `offset`.
pub fn embedding_character(alg: &FiniteDimRealAlgebra, offset: usize) -> Character {
    let mut images = vec![Quaternion::ZERO; alg.dim()];
    images[offset] = Quaternion::ONE;
    images[offset + 1] = Quaternion::I;
    Character::new(alg, images).expect("offset within range")
}

/// A named (algebra, seminorm) pairing with its expected verdict.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub algebra: FiniteDimRealAlgebra,
    pub seminorm: SeminormSpec,
    pub branch_policy: BranchPolicy,
    /// The quotient is a product of R, C and H summands whose characters the
    /// search finds exhaustively.
    pub complete_characters: bool,
    pub expected: Verdict,
    pub exercises: &'static str,
}

impl CorpusEntry {
    /// `base` with this entry's branch policy and character completeness.
    pub fn config(&self, base: &PipelineConfig) -> PipelineConfig {
        PipelineConfig {
            branch_policy: self.branch_policy,
            known_complete_characters: self.complete_characters,
            ..base.clone()
        }
    }
}

fn entry(
    id: &'static str,
    algebra: FiniteDimRealAlgebra,
    seminorm: SeminormSpec,
    expected: Verdict,
    exercises: &'static str,
) -> CorpusEntry {
    CorpusEntry {
        id,
        algebra,
        seminorm,
        branch_policy: BranchPolicy::Natural,
        complete_characters: expected == Verdict::Pass,
        expected,
        exercises,
    }
}

/// Every builtin pairing.
pub fn manifest() -> Vec<CorpusEntry> {
    let rr = direct_sum(&[reals(), reals()]);
    let rrc = direct_sum(&[reals(), reals(), complexes()]);
    let h = quaternions();
    let hc = direct_sum(&[quaternions(), complexes()]);
    let hc_chars = vec![
        conjugation_character(&hc, 0, Quaternion::new(1.0, 1.0, 1.0, 1.0)),
        embedding_character(&hc, 4),
    ];
    let h_identity = conjugation_character(&h, 0, Quaternion::ONE);
    let mut forced = entry(
        "extended-null-forced-unitization",
        extended_null(),
        SeminormSpec::ComponentSup(vec![0, 1]),
        Verdict::Pass,
        "non-unital algebra R+R+N; the kernel N is a 1-dim ideal and the quotient R+R is \
         unitized anyway, exercising N(b + l e) = ||b|| + |l| and property (ii) as a finding",
    );
    forced.branch_policy = BranchPolicy::ForceUnitization;
    forced.complete_characters = false;
    vec![
        entry(
            "rr-coordinate-max",
            rr.clone(),
            SeminormSpec::CoordinateMax(vec![1.0, 1.0]),
            Verdict::Pass,
            "sup norm on R+R: trivial kernel, unital branch with the two projections",
        ),
        entry(
            "rr-component-sup",
            rr.clone(),
            SeminormSpec::ComponentSup(vec![0]),
            Verdict::Pass,
            "seminorm with 1-dim kernel; quotient by the kernel is R",
        ),
        entry(
            "rrc-spectral-radius",
            rrc,
            SeminormSpec::SpectralRadius,
            Verdict::Pass,
            "spectral radius on a commutative semisimple algebra; characters include C embeddings",
        ),
        entry(
            "h-identity-character",
            h.clone(),
            SeminormSpec::CharacterSup(vec![h_identity]),
            Verdict::Pass,
            "noncommutative division algebra; the identity character gives the quaternion norm",
        ),
        entry(
            "hc-character-sup",
            hc,
            SeminormSpec::CharacterSup(hc_chars),
            Verdict::Pass,
            "one conjugation character on H and one embedding on C; sup over both",
        ),
        entry(
            "h2-spectral-radius",
            function_algebra_h(2),
            SeminormSpec::SpectralRadius,
            Verdict::Pass,
            "H-valued functions on two points; the spectral radius is the sup of pointwise norms",
        ),
        entry(
            "extended-null-spectral-radius",
            extended_null(),
            SeminormSpec::SpectralRadius,
            Verdict::Pass,
            "non-unital algebra whose radical N is the kernel of r; unital quotient R+R",
        ),
        forced,
        entry(
            "c-coordinate-sum",
            complexes(),
            SeminormSpec::CoordinateSum(vec![1.0, 1.0]),
            Verdict::HypothesisNotMet,
            "l1 norm on C: submultiplicative but p((1+i)^2) = 2 < 4 = p(1+i)^2",
        ),
        entry(
            "rr-scaled-coordinate-max",
            rr,
            SeminormSpec::CoordinateMax(vec![2.0, 2.0]),
            Verdict::HypothesisNotMet,
            "2 x sup norm: best constant 1/2 and no square property",
        ),
        entry(
            "m2-spectral-radius",
            m2_reals(),
            SeminormSpec::SpectralRadius,
            Verdict::HypothesisNotMet,
            "square property holds but r is not a seminorm: r(E12) = r(E21) = 0, r(E12 + E21) = 1",
        ),
        entry(
            "m2-operator-norm",
            m2_reals(),
            SeminormSpec::OperatorNorm,
            Verdict::HypothesisNotMet,
            "submultiplicative norm without the square property: E12^2 = 0",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_algebra_is_associative_with_valid_unit() {
        for alg in all_algebras() {
            if let Some(u) = alg.unit() {
                assert!(alg.unit_residual(u) <= 1e-12, "{}", alg.name());
            }
        }
        assert!(!extended_null().is_unital());
        assert!(!null_line().is_unital());
    }

    #[test]
    fn builtin_characters_are_multiplicative() {
        let hc = direct_sum(&[quaternions(), complexes()]);
        for c in [
            conjugation_character(&hc, 0, Quaternion::new(1.0, 1.0, 1.0, 1.0)),
            embedding_character(&hc, 4),
        ] {
            assert!(c.is_valid_for(&hc), "{c:?}");
        }
        // conjugation by (1+i+j+k)/2 cycles i -> j -> k
        let c = conjugation_character(&quaternions(), 0, Quaternion::new(1.0, 1.0, 1.0, 1.0));
        assert!(c.images[1].max_abs_diff(Quaternion::J) < 1e-15);
    }

    #[test]
    fn manifest_payloads_fit() {
        let m = manifest();
        assert_eq!(m.len(), 12);
        for e in &m {
            e.seminorm.validate(&e.algebra).unwrap();
        }
        let mut ids: Vec<_> = m.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), m.len());
    }
}
