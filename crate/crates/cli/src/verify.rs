//! The cross-check driver: every formula family evaluated against its
//! independent alternatives, plus brute-force and OEIS fixtures on
//! request. Each check reports how many cases it covered and the first
//! witness of failure, if any.

use momentgenus::exactmath::{binomial, Polynomial, RationalFunction};
use momentgenus::facevec::{face_vector_brondsted, face_vector_grunbaum};
use momentgenus::genus::{
    aux_s, chi_cell_sum, chi_closed, chi_genfunc, chi_simplified, genus_closed, genus_from_chi,
    genus_genfunc, genus_signed_form,
};
use momentgenus::ops::{
    apply_book, apply_script, apply_truncate, genus_after_ops, initial_state, Op, OpScript,
};
use momentgenus::oracle::{chi_by_cells, dual_f_vector, enumerate_face_counts, gale_facets};
use momentgenus::{ExactInt, PolytopeParams};
use momentgenus_oeis::{compare_prefix, FetchSource, OeisClient, BINDINGS};
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// First failing witness, if the check failed.
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn ok(name: &'static str, cases: usize) -> CheckOutcome {
    CheckOutcome {
        name,
        cases,
        failure: None,
    }
}

fn fail(name: &'static str, cases: usize, witness: String) -> CheckOutcome {
    CheckOutcome {
        name,
        cases,
        failure: Some(witness),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub max_p: u32,
    pub max_m: u32,
    pub oracle: bool,
    pub oeis: bool,
}

fn pm(p: u32, m: u32) -> PolytopeParams {
    PolytopeParams::new(p, m).expect("p >= 1 by construction")
}

/// Runs the configured checks concurrently and returns the outcomes
/// sorted by name, so output order never depends on scheduling.
pub fn run_all(cfg: VerifyConfig) -> Vec<CheckOutcome> {
    type Check = Box<dyn Fn() -> CheckOutcome + Send + Sync>;
    let mut checks: Vec<Check> = vec![
        Box::new(move || chi_four_way(cfg.max_p, cfg.max_m)),
        Box::new(move || chi_aux_decomposition(cfg.max_p, cfg.max_m)),
        Box::new(move || genus_three_way(cfg.max_p, cfg.max_m)),
        Box::new(move || chi_genus_relation(cfg.max_p, cfg.max_m)),
        Box::new(move || chi_special_values(cfg.max_p.max(50))),
        Box::new(move || g1_closed_form(cfg.max_m.max(40))),
        Box::new(move || face_formulas_agree(cfg.max_p.min(12), cfg.max_m.min(24))),
        Box::new(move || face_sum_gives_chi(cfg.max_p.min(12), cfg.max_m.min(24))),
        Box::new(|| series_binomial_columns(10, 50)),
        Box::new(|| ops_order_independence(3, 3, 6)),
        Box::new(|| ops_simplex_family(30)),
        Box::new(move || ops_book_invariance(cfg.max_p.min(6), cfg.max_m.min(6))),
    ];
    if cfg.oracle {
        checks.push(Box::new(oracle_face_vectors));
        checks.push(Box::new(oracle_chi));
    }
    if cfg.oeis {
        checks.push(Box::new(oeis_fixture_prefixes));
    }
    let mut outcomes: Vec<CheckOutcome> = checks.par_iter().map(|check| check()).collect();
    outcomes.sort_by_key(|o| o.name);
    outcomes
}

/// Cell sum, collapsed form, closed form and generating function all give
/// the same chi.
pub fn chi_four_way(max_p: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "chi-four-way";
    let mut cases = 0;
    for p in 1..=max_p {
        let series = chi_genfunc(p, max_m);
        for m in 0..=max_m {
            cases += 1;
            let params = pm(p, m);
            let cells = chi_cell_sum(params);
            let simplified = chi_simplified(params);
            let closed = chi_closed(params);
            let from_series = &series[m as usize];
            if cells != simplified || &cells != from_series || cells != closed {
                return fail(
                    NAME,
                    cases,
                    format!(
                        "p={p} m={m}: cells {cells}, simplified {simplified}, \
                         closed {closed}, series {from_series}"
                    ),
                );
            }
        }
    }
    ok(NAME, cases)
}

/// chi(p,m) = S(p,m) + S(p-1,m).
pub fn chi_aux_decomposition(max_p: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "chi-aux-decomposition";
    let mut cases = 0;
    for p in 1..=max_p {
        for m in 0..=max_m {
            cases += 1;
            let chi = chi_closed(pm(p, m));
            let decomposed = aux_s(p, m) + aux_s(p - 1, m);
            if chi != decomposed {
                return fail(NAME, cases, format!("p={p} m={m}: {chi} != {decomposed}"));
            }
        }
    }
    ok(NAME, cases)
}

/// Closed sum, signed form, chi-derived value and generating function all
/// give the same genus.
pub fn genus_three_way(max_p: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "genus-three-way";
    let mut cases = 0;
    for p in 1..=max_p {
        let series = genus_genfunc(p, max_m);
        for m in 0..=max_m {
            cases += 1;
            let params = pm(p, m);
            let closed = genus_closed(params);
            let signed = genus_signed_form(params);
            let from_chi = match genus_from_chi(params) {
                Ok(v) => v,
                Err(e) => return fail(NAME, cases, format!("p={p} m={m}: {e}")),
            };
            let from_series = &series[m as usize];
            if closed != signed || closed != from_chi || &closed != from_series {
                return fail(
                    NAME,
                    cases,
                    format!(
                        "p={p} m={m}: closed {closed}, signed {signed}, \
                         from-chi {from_chi}, series {from_series}"
                    ),
                );
            }
        }
    }
    ok(NAME, cases)
}

/// chi = 2 + (-1)^p 2 g.
pub fn chi_genus_relation(max_p: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "chi-genus-relation";
    let mut cases = 0;
    for p in 1..=max_p {
        for m in 0..=max_m {
            cases += 1;
            let params = pm(p, m);
            let chi = chi_closed(params);
            let doubled: ExactInt = genus_closed(params) * 2;
            let expected = if p % 2 == 1 { -doubled } else { doubled } + 2;
            if chi != expected {
                return fail(NAME, cases, format!("p={p} m={m}: {chi} != {expected}"));
            }
        }
    }
    ok(NAME, cases)
}

/// chi(p,0) = 2, chi(p,1) = 2(1 + (-1)^p), chi(p,2) = 2 + (-1)^p(4p+6).
pub fn chi_special_values(max_p: u32) -> CheckOutcome {
    const NAME: &str = "chi-special-values";
    let mut cases = 0;
    for p in 1..=max_p {
        cases += 3;
        let sign = if p % 2 == 0 { 1i64 } else { -1 };
        let expected = [
            (0u32, ExactInt::from(2)),
            (1, ExactInt::from(2 * (1 + sign))),
            (2, ExactInt::from(2 + sign * (4 * i64::from(p) + 6))),
        ];
        for (m, want) in expected {
            let got = chi_closed(pm(p, m));
            if got != want {
                return fail(NAME, cases, format!("p={p} m={m}: {got} != {want}"));
            }
        }
    }
    ok(NAME, cases)
}

/// g(1,m) = 2^m (m-1) + 1.
pub fn g1_closed_form(max_m: u32) -> CheckOutcome {
    const NAME: &str = "g1-closed-form";
    let mut cases = 0;
    for m in 0..=max_m {
        cases += 1;
        let got = genus_closed(pm(1, m));
        let want = (ExactInt::from(i64::from(m) - 1) << m as usize) + 1;
        if got != want {
            return fail(NAME, cases, format!("m={m}: {got} != {want}"));
        }
    }
    ok(NAME, cases)
}

/// The two face-vector formulas agree elementwise.
pub fn face_formulas_agree(max_p: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "face-formulas-agree";
    let mut cases = 0;
    for p in 1..=max_p {
        for m in 0..=max_m {
            cases += 1;
            let params = pm(p, m);
            let direct = face_vector_brondsted(params);
            let dualized = match face_vector_grunbaum(params) {
                Ok(v) => v,
                Err(e) => return fail(NAME, cases, format!("p={p} m={m}: {e}")),
            };
            if direct != dualized {
                let k = (0..=params.dim() as usize)
                    .find(|&k| direct.count(k) != dualized.count(k))
                    .unwrap_or(0);
                return fail(
                    NAME,
                    cases,
                    format!(
                        "p={p} m={m} k={k}: {} != {}",
                        direct.count(k),
                        dualized.count(k)
                    ),
                );
            }
        }
    }
    ok(NAME, cases)
}

/// The alternating cell sum over the dualized face formula reproduces
/// chi, tying the two modules together.
pub fn face_sum_gives_chi(max_p: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "face-sum-gives-chi";
    let mut cases = 0;
    for p in 1..=max_p {
        for m in 0..=max_m {
            cases += 1;
            let params = pm(p, m);
            let f = match face_vector_grunbaum(params) {
                Ok(v) => v,
                Err(e) => return fail(NAME, cases, format!("p={p} m={m}: {e}")),
            };
            let mut chi = ExactInt::from(0);
            for (k, count) in f.counts().iter().enumerate() {
                let cells = count << (m as usize + k + 1);
                if k % 2 == 0 {
                    chi += cells;
                } else {
                    chi -= cells;
                }
            }
            let closed = chi_closed(params);
            if chi != closed {
                return fail(NAME, cases, format!("p={p} m={m}: {chi} != {closed}"));
            }
        }
    }
    ok(NAME, cases)
}

/// The expansion of 1/(1-z)^{j+1} has coefficients C(m+j, j).
pub fn series_binomial_columns(max_j: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "series-binomial-columns";
    let mut cases = 0;
    for j in 0..=max_j {
        let f = RationalFunction::new(
            Polynomial::from_ints(&[1]),
            Polynomial::from_ints(&[1, -1]).pow(j + 1),
        )
        .expect("denominator has unit constant term");
        let prefix = match f.series_prefix(max_m as usize + 1) {
            Ok(p) => p,
            Err(e) => return fail(NAME, cases, format!("j={j}: {e}")),
        };
        for m in 0..=max_m {
            cases += 1;
            let want = binomial(i64::from(m + j), i64::from(j));
            let got = &prefix[m as usize];
            if got != &want {
                return fail(NAME, cases, format!("j={j} m={m}: {got} != {want}"));
            }
        }
    }
    ok(NAME, cases)
}

/// Exhaustive: over every B/V script up to the given length, the final
/// genus depends only on the base and the truncation count, and equals
/// the closed form.
pub fn ops_order_independence(max_p: u32, max_m: u32, max_len: u32) -> CheckOutcome {
    const NAME: &str = "ops-order-independence";
    let mut cases = 0;
    for p in 1..=max_p {
        for m in 0..=max_m {
            let start = initial_state(pm(p, m));
            for len in 0..=max_len {
                for bits in 0u32..(1 << len) {
                    cases += 1;
                    let ops: Vec<Op> = (0..len)
                        .map(|i| {
                            if bits >> i & 1 == 0 {
                                Op::Book { facet: None }
                            } else {
                                Op::Truncate { vertex: None }
                            }
                        })
                        .collect();
                    let truncations = bits.count_ones();
                    let script = OpScript::new(ops);
                    let got = apply_script(&start, &script);
                    let want = genus_after_ops(start.genus(), m, truncations);
                    if got.final_state().genus() != &want {
                        return fail(
                            NAME,
                            cases,
                            format!(
                                "p={p} m={m} script={script}: {} != {want}",
                                got.final_state().genus()
                            ),
                        );
                    }
                }
            }
        }
    }
    ok(NAME, cases)
}

/// Truncated-simplex family: iterated truncation matches 2^t (t-1) + 1.
pub fn ops_simplex_family(max_t: u32) -> CheckOutcome {
    const NAME: &str = "ops-simplex-family";
    let mut cases = 0;
    let mut state = initial_state(pm(1, 0));
    for t in 0..=max_t {
        cases += 1;
        let closed = genus_after_ops(&ExactInt::from(0), 0, t);
        let want = (ExactInt::from(i64::from(t) - 1) << t as usize) + 1;
        // t = 0 is the sphere, genus 0, not covered by the t >= 1 form.
        let want = if t == 0 { ExactInt::from(0) } else { want };
        if closed != want || state.genus() != &want {
            return fail(
                NAME,
                cases,
                format!("t={t}: closed {closed}, iterated {}, want {want}", state.genus()),
            );
        }
        state = apply_truncate(&state);
    }
    ok(NAME, cases)
}

/// Book operations never change the genus, from any reachable state.
pub fn ops_book_invariance(max_p: u32, max_m: u32) -> CheckOutcome {
    const NAME: &str = "ops-book-invariance";
    let mut cases = 0;
    for p in 1..=max_p {
        for m in 0..=max_m {
            let mut state = initial_state(pm(p, m));
            for _ in 0..6 {
                cases += 1;
                let booked = apply_book(&state);
                if booked.genus() != state.genus() {
                    return fail(
                        NAME,
                        cases,
                        format!("p={p} m={m}: {} != {}", booked.genus(), state.genus()),
                    );
                }
                if booked.facets() - booked.dim() != state.facets() - state.dim() {
                    return fail(NAME, cases, format!("p={p} m={m}: facet excess moved"));
                }
                // Walk somewhere new before checking again.
                state = apply_truncate(&booked);
            }
        }
    }
    ok(NAME, cases)
}

/// Cyclic-polytope enumeration reproduces the face-vector formulas for
/// every even d <= 8 and n <= d + 7.
pub fn oracle_face_vectors() -> CheckOutcome {
    const NAME: &str = "oracle-face-vectors";
    let mut cases = 0;
    for d in [2u32, 4, 6, 8] {
        for n in d + 1..=d + 7 {
            cases += 1;
            let facets = match gale_facets(d, n) {
                Ok(f) => f,
                Err(e) => return fail(NAME, cases, format!("d={d} n={n}: {e}")),
            };
            let complex = enumerate_face_counts(&facets, n);
            let dual = dual_f_vector(&complex, d);
            let formula = face_vector_brondsted(pm(d / 2, n - d - 1));
            if dual != formula {
                return fail(NAME, cases, format!("d={d} n={n}: face vectors differ"));
            }
            if ExactInt::from(facets.len()) != formula.count(0) {
                return fail(
                    NAME,
                    cases,
                    format!("d={d} n={n}: {} facets != f_0 {}", facets.len(), formula.count(0)),
                );
            }
        }
    }
    ok(NAME, cases)
}

/// Raw cell counting over the oracle's face vectors reproduces chi.
pub fn oracle_chi() -> CheckOutcome {
    const NAME: &str = "oracle-chi";
    let mut cases = 0;
    for d in [2u32, 4, 6, 8] {
        for n in d + 1..=d + 7 {
            cases += 1;
            let facets = match gale_facets(d, n) {
                Ok(f) => f,
                Err(e) => return fail(NAME, cases, format!("d={d} n={n}: {e}")),
            };
            let dual = dual_f_vector(&enumerate_face_counts(&facets, n), d);
            let brute = chi_by_cells(&dual, n, d);
            let closed = chi_closed(pm(d / 2, n - d - 1));
            if brute != closed {
                return fail(NAME, cases, format!("d={d} n={n}: {brute} != {closed}"));
            }
        }
    }
    ok(NAME, cases)
}

/// Every bound OEIS fixture matches the genus sequence on a prefix of at
/// least 20 terms.
pub fn oeis_fixture_prefixes() -> CheckOutcome {
    const NAME: &str = "oeis-fixture-prefixes";
    let client = OeisClient::from_env();
    let mut cases = 0;
    for binding in BINDINGS {
        let Some(id) = binding.oeis_id else {
            continue;
        };
        cases += 1;
        let seq = match client.fetch(id, FetchSource::Fixture) {
            Ok(s) => s,
            Err(e) => return fail(NAME, cases, format!("p={}: {e}", binding.p)),
        };
        let computed = genus_genfunc(binding.p, 40);
        let report = compare_prefix(&computed, &seq, binding.index_shift);
        if report.match_len < 20 {
            let detail = report
                .mismatch
                .map(|mm| {
                    format!(
                        "mismatch at index {}: {} != {}",
                        mm.oeis_index, mm.computed, mm.expected
                    )
                })
                .unwrap_or_else(|| "insufficient overlap".to_string());
            return fail(
                NAME,
                cases,
                format!("p={} {id}: match_len {} < 20 ({detail})", binding.p, report.match_len),
            );
        }
    }
    ok(NAME, cases)
}
