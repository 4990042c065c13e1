//! Symbolic tracking of the genus of Z under two polytope operations: the
//! book construction (which raises dimension and facet count by one and
//! leaves homology untouched) and simple vertex truncation (which doubles
//! the genus and adds 2^{n-d} - 1 new summands).
//!
//! Scripts mix the two freely. The genus of the result depends only on the
//! starting polytope and the number of truncations, a fact the test suite
//! checks exhaustively rather than assumes.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactmath::ExactInt;
use crate::facevec::PolytopeParams;
use crate::genus::genus_closed;

/// What is known about the connected-sum decomposition of Z.
///
/// Deliberately conservative: a sphere-product type is asserted only in
/// the settled cases, everything else degrades to `MixedUnknown` with the
/// summand count intact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorDescriptor {
    /// Genus zero: Z is a single sphere, no summands at all.
    SphereOnly,
    /// A connected sum of `count` copies of S^a x S^b.
    AllEqual { a: u32, b: u32, count: ExactInt },
    /// `count` sphere-product summands of undetermined types.
    MixedUnknown { count: ExactInt },
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorDescriptor::SphereOnly => write!(f, "sphere"),
            FactorDescriptor::AllEqual { a, b, count } => {
                write!(f, "{count} x (S^{a} x S^{b})")
            }
            FactorDescriptor::MixedUnknown { count } => {
                write!(f, "{count} sphere products (mix unknown)")
            }
        }
    }
}

/// State of Z after a sequence of operations on the starting polytope.
/// Dimension and facet count are derived: every operation adds one facet,
/// and books also add one dimension, so facets - dim = m + 1 + truncations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpState {
    base: PolytopeParams,
    books: u32,
    truncations: u32,
    genus: ExactInt,
    factors: FactorDescriptor,
}

impl OpState {
    pub fn base(&self) -> PolytopeParams {
        self.base
    }

    pub fn books(&self) -> u32 {
        self.books
    }

    pub fn truncations(&self) -> u32 {
        self.truncations
    }

    pub fn dim(&self) -> u32 {
        self.base.dim() + self.books
    }

    pub fn facets(&self) -> u32 {
        self.base.facets() + self.books + self.truncations
    }

    pub fn genus(&self) -> &ExactInt {
        &self.genus
    }

    pub fn factors(&self) -> &FactorDescriptor {
        &self.factors
    }

    fn is_pristine(&self) -> bool {
        self.books == 0 && self.truncations == 0
    }
}

/// Starting state for the polytope itself, genus from the closed form.
///
/// The factor types are only claimed where settled: a simplex gives a
/// sphere, and for d != 4 the summands are all S^p x S^p. In dimension
/// four only the summand count is reported.
pub fn initial_state(params: PolytopeParams) -> OpState {
    let genus = genus_closed(params);
    let factors = if genus.is_zero() {
        FactorDescriptor::SphereOnly
    } else if params.dim() != 4 {
        FactorDescriptor::AllEqual {
            a: params.p(),
            b: params.p(),
            count: genus.clone(),
        }
    } else {
        FactorDescriptor::MixedUnknown {
            count: genus.clone(),
        }
    };
    OpState {
        base: params,
        books: 0,
        truncations: 0,
        genus,
        factors,
    }
}

/// Book construction: dimension and facet count grow by one, the genus
/// does not move. One book on the untouched base polytope turns the
/// summands into S^p x S^{p+1}, dimension four included; after that the
/// types are no longer tracked.
pub fn apply_book(state: &OpState) -> OpState {
    let factors = if state.genus.is_zero() {
        FactorDescriptor::SphereOnly
    } else if state.is_pristine() {
        FactorDescriptor::AllEqual {
            a: state.base.p(),
            b: state.base.p() + 1,
            count: state.genus.clone(),
        }
    } else {
        FactorDescriptor::MixedUnknown {
            count: state.genus.clone(),
        }
    };
    OpState {
        books: state.books + 1,
        factors,
        ..state.clone()
    }
}

/// Vertex truncation: the facet count grows by one, the dimension stays,
/// and the genus becomes 2g + 2^{n-d} - 1 with n - d taken before the new
/// facet is counted. The new summands are S^1 x S^{d-1}, so the summand
/// types stay uniform only when truncating a repeatedly truncated simplex
/// of dimension 2 (where S^1 x S^{d-1} = S^1 x S^1).
pub fn apply_truncate(state: &OpState) -> OpState {
    let excess = state.facets() - state.dim();
    let genus: ExactInt = &state.genus * 2 + (ExactInt::from(1) << excess as usize) - 1;
    let truncated_polygon = state.base.dim() == 2 && state.books == 0;
    let factors = if truncated_polygon {
        FactorDescriptor::AllEqual {
            a: 1,
            b: 1,
            count: genus.clone(),
        }
    } else {
        FactorDescriptor::MixedUnknown {
            count: genus.clone(),
        }
    };
    OpState {
        truncations: state.truncations + 1,
        genus,
        factors,
        ..state.clone()
    }
}

/// Genus after t truncations (books interleaved anywhere), in closed
/// form: 2^t (g0 - 1) + t 2^{m+t} + 1.
pub fn genus_after_ops(g0: &ExactInt, m: u32, t: u32) -> ExactInt {
    let doubled = (g0 - 1) << t as usize;
    let added = ExactInt::from(t) << (m + t) as usize;
    doubled + added + 1
}

/// One operation of a script. Facet and vertex indices select where the
/// operation acts; they change the combinatorial type but not the genus,
/// so they are carried along for the trace and otherwise ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Book { facet: Option<u32> },
    Truncate { vertex: Option<u32> },
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Book { facet: None } => write!(f, "B"),
            Op::Book { facet: Some(i) } => write!(f, "B@{i}"),
            Op::Truncate { vertex: None } => write!(f, "V"),
            Op::Truncate { vertex: Some(i) } => write!(f, "V@{i}"),
        }
    }
}

/// A comma-separated sequence of `B`, `B@f`, `V`, `V@v` tokens.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpScript {
    ops: Vec<Op>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("script error at column {column}: {message}")]
pub struct ScriptParseError {
    pub column: usize,
    pub message: String,
}

impl OpScript {
    pub fn new(ops: Vec<Op>) -> Self {
        OpScript { ops }
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn truncation_count(&self) -> u32 {
        self.ops
            .iter()
            .filter(|op| matches!(op, Op::Truncate { .. }))
            .count() as u32
    }

    /// Parses the token grammar. An empty (or all-whitespace) script is
    /// the empty sequence. Columns are 1-based byte positions.
    pub fn parse(text: &str) -> Result<Self, ScriptParseError> {
        let mut ops = Vec::new();
        if text.trim().is_empty() {
            return Ok(OpScript { ops });
        }
        let mut column = 1usize;
        for raw in text.split(',') {
            let token = raw.trim();
            let token_column = column + (raw.len() - raw.trim_start().len());
            let fail = |message: String| ScriptParseError {
                column: token_column,
                message,
            };
            if token.is_empty() {
                return Err(fail("empty op token".into()));
            }
            let (head, index) = match token.split_once('@') {
                Some((head, index_text)) => {
                    let index = index_text.parse::<u32>().map_err(|_| {
                        fail(format!(
                            "bad index {index_text:?}: expected a nonnegative integer"
                        ))
                    })?;
                    (head, Some(index))
                }
                None => (token, None),
            };
            let op = match head {
                "B" => Op::Book { facet: index },
                "V" => Op::Truncate { vertex: index },
                _ => return Err(fail(format!("unknown op {head:?}: expected B or V"))),
            };
            ops.push(op);
            column += raw.len() + 1;
        }
        Ok(OpScript { ops })
    }
}

impl fmt::Display for OpScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.ops.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

/// The result of running a script: every intermediate state, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptTrace {
    pub initial: OpState,
    pub steps: Vec<(Op, OpState)>,
}

impl ScriptTrace {
    pub fn final_state(&self) -> &OpState {
        self.steps.last().map_or(&self.initial, |(_, s)| s)
    }
}

pub fn apply_script(start: &OpState, script: &OpScript) -> ScriptTrace {
    let mut steps = Vec::with_capacity(script.ops().len());
    let mut current = start.clone();
    for &op in script.ops() {
        let next = match op {
            Op::Book { .. } => apply_book(&current),
            Op::Truncate { .. } => apply_truncate(&current),
        };
        steps.push((op, next.clone()));
        current = next;
    }
    ScriptTrace {
        initial: start.clone(),
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn pm(p: u32, m: u32) -> PolytopeParams {
        PolytopeParams::new(p, m).unwrap()
    }

    #[test]
    fn initial_states() {
        let s = initial_state(pm(3, 2));
        assert_eq!(s.dim(), 6);
        assert_eq!(s.facets(), 9);
        assert_eq!(s.genus(), &ExactInt::from(9));
        assert_eq!(
            s.factors(),
            &FactorDescriptor::AllEqual {
                a: 3,
                b: 3,
                count: ExactInt::from(9)
            }
        );

        // Dimension four: summand count known, types not claimed.
        let four = initial_state(pm(2, 1));
        assert_eq!(four.dim(), 4);
        assert_eq!(four.facets(), 6);
        assert_eq!(
            four.factors(),
            &FactorDescriptor::MixedUnknown {
                count: ExactInt::one()
            }
        );

        let simplex = initial_state(pm(1, 0));
        assert_eq!(simplex.dim(), 2);
        assert_eq!(simplex.facets(), 3);
        assert_eq!(simplex.factors(), &FactorDescriptor::SphereOnly);
    }

    #[test]
    fn book_preserves_genus_and_settles_types() {
        let s = apply_book(&initial_state(pm(2, 1)));
        assert_eq!(s.dim(), 5);
        assert_eq!(s.facets(), 7);
        assert_eq!(s.genus(), &ExactInt::one());
        assert_eq!(
            s.factors(),
            &FactorDescriptor::AllEqual {
                a: 2,
                b: 3,
                count: ExactInt::one()
            }
        );

        let pentagon_book = apply_book(&initial_state(pm(1, 2)));
        assert_eq!(pentagon_book.dim(), 3);
        assert_eq!(pentagon_book.facets(), 6);
        assert_eq!(pentagon_book.genus(), &ExactInt::from(5));
        assert_eq!(
            pentagon_book.factors(),
            &FactorDescriptor::AllEqual {
                a: 1,
                b: 2,
                count: ExactInt::from(5)
            }
        );

        let twice = apply_book(&apply_book(&initial_state(pm(3, 0))));
        assert_eq!(twice.dim(), 8);
        assert_eq!(twice.facets(), 9);
        assert_eq!(twice.genus(), &ExactInt::zero());
        assert_eq!(twice.factors(), &FactorDescriptor::SphereOnly);
    }

    #[test]
    fn second_book_loses_type_information() {
        let s = apply_book(&apply_book(&initial_state(pm(3, 2))));
        assert_eq!(
            s.factors(),
            &FactorDescriptor::MixedUnknown {
                count: ExactInt::from(9)
            }
        );
    }

    #[test]
    fn truncation_recursion_from_simplex() {
        // From any simplex base, truncation genera run 1, 5, 17, ...
        // independent of the dimension, matching 2^t (t-1) + 1.
        for p in 1..=3u32 {
            let mut s = initial_state(pm(p, 0));
            for t in 1..=10u32 {
                s = apply_truncate(&s);
                let expected = (ExactInt::from(i64::from(t) - 1) << t as usize) + 1;
                assert_eq!(s.genus(), &expected, "p={p} t={t}");
                assert_eq!(s.dim(), 2 * p);
                assert_eq!(s.facets(), 2 * p + 1 + t);
            }
        }
    }

    #[test]
    fn truncating_the_pentagon() {
        // Base (1,2): genus 5 with n - d = 3, so one truncation gives
        // 2*5 + 2^3 - 1 = 17, a second 2*17 + 2^4 - 1 = 49.
        let s0 = initial_state(pm(1, 2));
        let s1 = apply_truncate(&s0);
        assert_eq!(s1.genus(), &ExactInt::from(17));
        assert_eq!(
            s1.factors(),
            &FactorDescriptor::AllEqual {
                a: 1,
                b: 1,
                count: ExactInt::from(17)
            }
        );
        let s2 = apply_truncate(&s1);
        assert_eq!(s2.genus(), &ExactInt::from(49));
        assert_eq!(s2.genus(), &genus_after_ops(s0.genus(), 2, 2));
    }

    #[test]
    fn truncation_after_book_loses_type_information() {
        let s = apply_truncate(&apply_book(&initial_state(pm(1, 0))));
        assert!(matches!(
            s.factors(),
            FactorDescriptor::MixedUnknown { .. }
        ));
    }

    #[test]
    fn closed_form_frozen_values() {
        let g0 = ExactInt::zero();
        for t in 0..=30u32 {
            let expected = (ExactInt::from(i64::from(t) - 1) << t as usize) + 1;
            assert_eq!(genus_after_ops(&g0, 0, t), expected, "t={t}");
        }
        assert_eq!(genus_after_ops(&ExactInt::from(7), 4, 0), ExactInt::from(7));
        // 4*4 + 2*2^4 + 1 = 49
        assert_eq!(genus_after_ops(&ExactInt::from(5), 2, 2), ExactInt::from(49));
    }

    #[test]
    fn closed_form_satisfies_the_step_recursion() {
        for m in 0..=6u32 {
            for g0 in [0i64, 1, 5, 9, 111] {
                let g0 = ExactInt::from(g0);
                for t in 0..=20u32 {
                    let next = genus_after_ops(&g0, m, t + 1);
                    let step = genus_after_ops(&g0, m, t) * 2
                        + (ExactInt::one() << (m + t + 1) as usize)
                        - 1;
                    assert_eq!(next, step, "m={m} t={t}");
                }
            }
        }
    }

    #[test]
    fn script_parsing() {
        assert_eq!(OpScript::parse("").unwrap().ops(), &[]);
        assert_eq!(OpScript::parse("  ").unwrap().ops(), &[]);
        assert_eq!(
            OpScript::parse("B,V").unwrap().ops(),
            &[Op::Book { facet: None }, Op::Truncate { vertex: None }]
        );
        assert_eq!(
            OpScript::parse(" B@3 , V@0 ").unwrap().ops(),
            &[
                Op::Book { facet: Some(3) },
                Op::Truncate { vertex: Some(0) }
            ]
        );

        let err = OpScript::parse("B,,V").unwrap_err();
        assert_eq!(err.column, 3);
        let err = OpScript::parse("B,X").unwrap_err();
        assert_eq!(err.column, 3);
        let err = OpScript::parse("B,V@-1").unwrap_err();
        assert_eq!(err.column, 3);
    }

    #[test]
    fn script_display_round_trip() {
        for text in ["", "B", "B,V,V", "B@2,V@0,B"] {
            let script = OpScript::parse(text).unwrap();
            assert_eq!(OpScript::parse(&script.to_string()).unwrap(), script);
        }
    }

    #[test]
    fn script_trace_counts_and_final_state() {
        let start = initial_state(pm(1, 0));
        let script = OpScript::parse("V,B,V").unwrap();
        let trace = apply_script(&start, &script);
        assert_eq!(trace.steps.len(), 3);
        let end = trace.final_state();
        assert_eq!(end.books(), 1);
        assert_eq!(end.truncations(), 2);
        assert_eq!(end.dim(), 3);
        assert_eq!(end.facets(), 6);
        assert_eq!(end.genus(), &genus_after_ops(start.genus(), 0, 2));
    }

    #[test]
    fn order_independence_exhaustive_short_scripts() {
        // All B/V scripts of length <= 5: the final genus only depends on
        // the base and the number of V ops, and matches the closed form.
        for p in 1..=2u32 {
            for m in 0..=2u32 {
                let start = initial_state(pm(p, m));
                for len in 0..=5u32 {
                    for bits in 0..(1u32 << len) {
                        let ops: Vec<Op> = (0..len)
                            .map(|i| {
                                if bits >> i & 1 == 0 {
                                    Op::Book { facet: None }
                                } else {
                                    Op::Truncate { vertex: None }
                                }
                            })
                            .collect();
                        let t = bits.count_ones();
                        let trace = apply_script(&start, &OpScript::new(ops));
                        assert_eq!(
                            trace.final_state().genus(),
                            &genus_after_ops(start.genus(), m, t),
                            "p={p} m={m} len={len} bits={bits:b}"
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_scripts_are_order_independent(
            p in 1u32..=3,
            m in 0u32..=3,
            choices in prop::collection::vec(prop::bool::ANY, 0..10),
        ) {
            let start = initial_state(pm(p, m));
            let ops: Vec<Op> = choices
                .iter()
                .map(|&v| if v { Op::Truncate { vertex: None } } else { Op::Book { facet: None } })
                .collect();
            let t = ops.iter().filter(|op| matches!(op, Op::Truncate { .. })).count() as u32;
            let trace = apply_script(&start, &OpScript::new(ops));
            prop_assert_eq!(
                trace.final_state().genus(),
                &genus_after_ops(start.genus(), m, t)
            );
            // Books never move the facet excess.
            prop_assert_eq!(
                trace.final_state().facets() - trace.final_state().dim(),
                m + 1 + t
            );
        }
    }
}
