//! The randomized verification suite behind `ncx selftest` and the
//! acceptance tests: thirteen checkers, one per advertised guarantee, each
//! returning a small serializable verdict.
//!
//! Every checker draws its inputs from a ChaCha stream derived from the
//! configured seed, so a failing run is reproducible from its seed alone.
//! A checker reports failure instead of panicking; panics from library
//! cross-asserts are caught and folded into the verdict.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chainmap::ChainMap;
use crate::complex::{mu, NComplex};
use crate::elementary::{elementary, verify_elmap02};
use crate::field::FieldSpec;
use crate::generate::{
    implied_table, random_chain_map, random_complex, random_elementary, random_invertible,
    random_ses, rng,
};
use crate::homotopy::{is_contractible, null_homotopy_check, null_homotopy_witness};
use crate::matrix::Matrix;
use crate::mor::{ladder_slot, mor_homology, mor_window, nhn_check, qis_via_mor, sigma_mu_report,
    slot_of, smcatcp2_check};
use crate::qis::{acyclic, is_qis, les_ses_check, les_single, trunc_qis_check, ShortExactSeq};
use crate::triangles::{cone, cosuspend, cosuspend_map, pi_cover, pi_hull, sigma2_theta_iso,
    suspend, suspend_map, theta_shift_map};
use crate::{Error, Result};

/// Knobs for one suite run. The defaults are the documented desk scale.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { seed: 42, cases: 200 }
    }
}

/// Verdict for one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    /// Number of independent checks performed.
    pub cases: usize,
    pub detail: String,
}

type Body = fn(SuiteConfig) -> Result<(bool, usize, String)>;

const CRITERIA: [(&str, Body); 13] = [
    ("validation accepts exactly d^N = 0, on every constructed object", c01_validation),
    ("length-N blocks and envelopes are contractible with exact witnesses", c02_contractible),
    ("suspension squared is naturally the N-fold degree shift", c03_naturality),
    ("short exact sequences yield exact homology ladders", c04_ses_les),
    ("single-complex sequences are exact for all legal parameters", c05_les_single),
    ("quasi-isomorphism agrees with cone acyclicity", c06_qis_cone),
    ("pullback towers: qis, exact squares, and composite agree", c07_elementary),
    ("block hom spaces in the homotopy category compute homology", c08_block_homs),
    ("truncation is a qis under the vanishing hypothesis, exact in range", c09_truncation),
    ("ladder transport detects exactly the quasi-isomorphisms", c10_mor_transport),
    ("suspension class calendar and shift identities verified", c11_calendar),
    ("generated homology matches the hidden block decomposition", c12_generator_oracle),
    ("N = 2 machinery reproduces classical homological algebra", c13_classical),
];

/// Run all thirteen checkers; a panic inside one becomes its failure.
pub fn run_all(cfg: SuiteConfig) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .enumerate()
        .map(|(k, (name, body))| run_one(k + 1, name, *body, cfg))
        .collect()
}

fn run_one(id: usize, name: &str, body: Body, cfg: SuiteConfig) -> CriterionResult {
    let outcome = std::panic::catch_unwind(|| body(cfg));
    let (pass, cases, detail) = match outcome {
        Ok(Ok(triple)) => triple,
        Ok(Err(e)) => (false, 0, format!("error: {e}")),
        Err(payload) => (false, 0, format!("panic: {}", panic_text(&payload))),
    };
    CriterionResult { id, name: name.to_string(), pass, cases, detail }
}

fn panic_text(payload: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".to_string()
    }
}

fn case_rng(cfg: SuiteConfig, salt: u64) -> ChaCha8Rng {
    rng(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn pick_field(r: &mut ChaCha8Rng) -> FieldSpec {
    if r.gen_bool(0.5) {
        FieldSpec::Rationals
    } else {
        FieldSpec::fp(5).unwrap()
    }
}

fn pick_n(r: &mut ChaCha8Rng) -> usize {
    r.gen_range(2..=5)
}

fn c01_validation(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 1);
    let mut objects = 0usize;
    for _ in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let x = random_complex(n, field, -1, 2, 3, &mut r).complex;
        let y = random_complex(n, field, -1, 2, 3, &mut r).complex;
        let f = random_chain_map(&x, &y, &mut r);
        let nn = r.gen_range(-2..=3);
        let built = [
            x.clone(),
            suspend(&x),
            cosuspend(&x),
            pi_cover(&x).0,
            pi_hull(&x).0,
            cone(&f).c,
            x.sigma_le(nn),
            x.sigma_ge(nn),
            x.tau_le(nn),
            x.tau_ge(nn),
        ];
        for b in built {
            b.validate()?;
            objects += 1;
        }
        let (xe, u, i) = random_elementary(n, field, -1, 2, 2, &mut r);
        elementary(&xe, &u, i)?.0.validate()?;
        objects += 1;

        // Zero tolerance: an identity chain of length N+1 has d^N = 1 != 0
        // and must be rejected, exactly.
        let chain = NComplex::new(
            n,
            field,
            0,
            vec![1; n + 1],
            vec![Matrix::identity(field, 1); n],
        )?;
        match chain.validate() {
            Err(Error::NPowerNonzero(0)) => {}
            other => {
                return Ok((false, objects, format!("bad complex accepted: {other:?}")));
            }
        }
        objects += 1;
    }
    Ok((true, objects, format!("{objects} constructions checked")))
}

fn c02_contractible(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 2);
    let mut checks = 0usize;
    for _ in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let s = r.gen_range(-1..=2);
        let m = r.gen_range(1..=2);
        let x = random_complex(n, field, -1, 2, 2, &mut r).complex;
        let (p, _, _) = pi_cover(&x);
        let (i_env, _, _) = pi_hull(&x);
        for c in [mu(n, field, n, s, m)?, p, i_env] {
            if !is_contractible(&c) {
                return Ok((false, checks, "expected contractible object".into()));
            }
            let id = ChainMap::identity(&c);
            match null_homotopy_witness(&id) {
                Some(w) if null_homotopy_check(&id, &w) => {}
                _ => return Ok((false, checks, "identity witness missing or inexact".into())),
            }
            checks += 1;
        }
    }
    Ok((true, checks, format!("{checks} witnesses reproduced the identity exactly")))
}

fn c03_naturality(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 3);
    let mut checks = 0usize;
    for _ in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let x = random_complex(n, field, -1, 2, 3, &mut r).complex;
        let y = random_complex(n, field, -1, 2, 3, &mut r).complex;
        let f = random_chain_map(&x, &y, &mut r);
        let phi_x = sigma2_theta_iso(&x);
        let phi_y = sigma2_theta_iso(&y);
        phi_x.validate()?;
        if !phi_x.is_degreewise_iso() {
            return Ok((false, checks, "comparison map not invertible".into()));
        }
        let lhs = ChainMap::compose(&phi_y, &suspend_map(&f))?;
        let rhs = ChainMap::compose(&theta_shift_map(&cosuspend_map(&f), n as i64), &phi_x)?;
        if lhs != rhs {
            return Ok((false, checks, "naturality square broke".into()));
        }
        checks += 1;
    }
    Ok((true, checks, format!("{checks} naturality squares equal, matrix for matrix")))
}

fn c04_ses_les(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 4);
    let mut sequences = 0usize;
    for k in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let ses = if k % 2 == 0 {
            random_ses(n, field, -1, 1, 2, &mut r)
        } else {
            // Every cone comes with its inclusion/projection sequence.
            let x = random_complex(n, field, -1, 1, 2, &mut r).complex;
            let y = random_complex(n, field, -1, 1, 2, &mut r).complex;
            let t = cone(&random_chain_map(&x, &y, &mut r));
            ShortExactSeq::new(t.u, t.v)?
        };
        if !les_ses_check(&ses)?.exact {
            return Ok((false, sequences, "a homology ladder failed exactness".into()));
        }
        sequences += 1;
    }
    Ok((true, sequences, format!("{sequences} ladders exact at every node")))
}

fn c05_les_single(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 5);
    let mut reports = 0usize;
    for _ in 0..cfg.cases {
        let n = r.gen_range(3..=5); // N = 2 admits no legal (l, m)
        let field = pick_field(&mut r);
        let x = random_complex(n, field, -1, 2, 3, &mut r).complex;
        for l in 1..n {
            for m in 1..n {
                if l + m >= n {
                    continue;
                }
                if !les_single(&x, l, m)?.exact {
                    return Ok((false, reports, format!("sequence broke at l={l}, m={m}")));
                }
                reports += 1;
            }
        }
    }
    Ok((true, reports, format!("{reports} (l, m) sequences exact")))
}

fn c06_qis_cone(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 6);
    let mut checks = 0usize;
    for k in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let f = engineered_map(k, n, field, &mut r)?;
        if is_qis(&f) != acyclic(&cone(&f).c) {
            return Ok((false, checks, "qis and cone acyclicity disagreed".into()));
        }
        checks += 1;
    }
    Ok((true, checks, format!("{checks} maps, zero disagreements")))
}

/// Rotating mix of map shapes: random, identity, elementary qis, zero.
fn engineered_map(k: usize, n: usize, field: FieldSpec, r: &mut ChaCha8Rng) -> Result<ChainMap> {
    match k % 4 {
        0 => {
            let x = random_complex(n, field, -1, 2, 3, r).complex;
            let y = random_complex(n, field, -1, 2, 3, r).complex;
            Ok(random_chain_map(&x, &y, r))
        }
        1 => Ok(ChainMap::identity(&random_complex(n, field, -1, 2, 3, r).complex)),
        2 => {
            let amp = r.gen_range(1..=n);
            let s = r.gen_range(-1..=2);
            let x = mu(n, field, amp, s, 1)?;
            let u = random_invertible(field, 1, r);
            Ok(elementary(&x, &u, s)?.1)
        }
        _ => {
            let x = random_complex(n, field, -1, 2, 2, r).complex;
            let y = random_complex(n, field, -1, 2, 2, r).complex;
            Ok(ChainMap::zero_map(&x, &y))
        }
    }
}

fn c07_elementary(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 7);
    let mut checks = 0usize;
    for k in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        // verify_elmap02 itself asserts the three-way equivalence; here we
        // alternate random data with engineered exact and non-exact cases
        // whose verdicts are known in advance.
        let (x, u, i, expect) = match k % 3 {
            0 => {
                let (x, u, i) = random_elementary(n, field, -1, 2, 2, &mut r);
                (x, u, i, None)
            }
            1 => {
                let amp = r.gen_range(1..=n);
                let s = r.gen_range(-1..=2);
                let x = mu(n, field, amp, s, 1)?;
                let u = random_invertible(field, 1, &mut r);
                (x, u, s, Some(true))
            }
            _ => {
                let s = r.gen_range(-1..=2);
                let x = mu(n, field, 1, s, 1)?;
                let u = Matrix::zero(field, 1, 0);
                (x, u, s, Some(false))
            }
        };
        let report = verify_elmap02(&x, &u, i)?;
        let agree = report.qis == report.all_squares_exact
            && report.qis == report.composite_exact
            && report.pairwise_law_holds;
        let expected_ok = expect.map_or(true, |want| report.qis == want);
        if !agree || !expected_ok {
            return Ok((false, checks, format!("equivalence broke at case {k}")));
        }
        checks += 1;
    }
    Ok((true, checks, format!("{checks} towers, three-way equivalence intact")))
}

fn c08_block_homs(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 8);
    let mut pairs = 0usize;
    for _ in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let x = random_complex(n, field, -1, 2, 3, &mut r).complex;
        let (lo, hi) = if x.is_zero() {
            (0, 0)
        } else {
            (x.min_degree - 1, x.max_degree() + 1)
        };
        for amp in 1..n {
            for i in lo..=hi {
                if !nhn_check(&x, i, amp)? {
                    return Ok((false, pairs, format!("mismatch at degree {i}, amplitude {amp}")));
                }
                pairs += 1;
            }
        }
    }
    Ok((true, pairs, format!("{pairs} (degree, amplitude) pairs matched")))
}

fn c09_truncation(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 9);
    let mut checks = 0usize;
    for _ in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let nn = r.gen_range(0..=2);

        // Homology vanishing at and above nn makes the inclusion a qis;
        // a contractible tail above nn keeps the cut genuine.
        let low = random_complex(n, field, nn - 3, nn - 1, 2, &mut r).complex;
        let tail = mu(n, field, n, nn + r.gen_range(0..=1), 1)?;
        if !trunc_qis_check(&low.direct_sum(&tail)?, nn)? {
            return Ok((false, checks, "inclusion failed to be a qis".into()));
        }
        checks += 1;

        // A visible class at degree >= nn must be rejected as out of scope.
        let amp = r.gen_range(1..n.max(2));
        let bad = mu(n, field, amp, nn + r.gen_range(0..=1), 1)?;
        match trunc_qis_check(&bad, nn) {
            Err(Error::PreconditionFailed(_, _)) => checks += 1,
            other => return Ok((false, checks, format!("hypothesis not enforced: {other:?}"))),
        }

        // Truncation preserves homology exactly in the advertised ranges.
        let x = random_complex(n, field, -1, 2, 3, &mut r).complex;
        let le = x.sigma_le(nn);
        let ge = x.sigma_ge(nn);
        let ni = n as i64;
        for i in -8..=8i64 {
            for amp in 1..n {
                if i <= nn - ni + 1 && le.homology_dim(i, amp) != x.homology_dim(i, amp) {
                    return Ok((false, checks, format!("lower cut drifted at ({i}, {amp})")));
                }
                if i >= nn + ni - 2 && ge.homology_dim(i, amp) != x.homology_dim(i, amp) {
                    return Ok((false, checks, format!("upper cut drifted at ({i}, {amp})")));
                }
                checks += 1;
            }
        }
    }
    Ok((true, checks, format!("{checks} truncation checks held")))
}

fn c10_mor_transport(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 10);
    let mut checks = 0usize;
    let mut uncovered = 0usize;

    // Slot bookkeeping is injective and self-inverse: a homology position
    // sits in at most one ladder slot.
    for n in 2..=5usize {
        let mut seen = BTreeMap::new();
        for j in -6..=6i64 {
            for t in 1..n {
                let pos = ladder_slot(n, j, t);
                if slot_of(n, pos.0, pos.1) != Some((j, t)) {
                    return Ok((false, checks, format!("slot round-trip broke at {pos:?}")));
                }
                if seen.insert(pos, (j, t)).is_some() {
                    return Ok((false, checks, format!("two slots share position {pos:?}")));
                }
                checks += 1;
            }
        }
    }

    for k in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let f = engineered_map(k, n, field, &mut r)?;
        if qis_via_mor(&f) != is_qis(&f) {
            return Ok((false, checks, "ladder and direct qis tests disagreed".into()));
        }
        checks += 1;

        // Detection: the ladders of a complex are all zero exactly when it
        // is acyclic — nonzero homology never hides from every ladder.
        let x = f.source.clone();
        let any_ladder = mor_window(&x)
            .map(|w| w.into_iter().any(|j| !mor_homology(&x, j).is_zero()))
            .unwrap_or(false);
        if any_ladder == acyclic(&x) {
            return Ok((false, checks, "ladder detection failed".into()));
        }
        checks += 1;
        for (&(i, amp), _) in x.homology_table().iter() {
            if slot_of(n, i, amp).is_none() {
                uncovered += 1;
            }
        }
    }
    let coverage = if uncovered > 0 {
        format!(
            "{uncovered} nonzero classes sat outside every slot, so the stronger \
             'exactly one slot' reading fails and is reported, not assumed"
        )
    } else {
        "no slotless classes arose in this run, though the stronger 'exactly one \
         slot' reading fails in general"
            .to_string()
    };
    let detail =
        format!("{checks} checks; at-most-one slot per position and full detection hold ({coverage})");
    Ok((true, checks, detail))
}

fn c11_calendar(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let _ = cfg; // deterministic sweep; scale is fixed by the claim itself
    let mut checks = 0usize;
    let mut printed_even_ok = true;
    let mut printed_odd_ok = true;
    for field in [FieldSpec::Rationals, FieldSpec::fp(5).unwrap()] {
        for n in 2..=5usize {
            for r in 1..n {
                for j in -4..=4i64 {
                    let rep = sigma_mu_report(n, field, j, r)?;
                    if !rep.printed_matches {
                        if j.rem_euclid(2) == 0 {
                            printed_even_ok = false;
                        } else {
                            printed_odd_ok = false;
                        }
                    }
                    checks += 1;
                }
            }
            for i in -1..=1i64 {
                let rep = smcatcp2_check(n, field, 1, i)?;
                if !rep.corrected_all {
                    return Ok((false, checks, format!("shift identity failed at N={n}, i={i}")));
                }
                checks += 1;
            }
        }
    }
    if !printed_even_ok {
        return Ok((false, checks, "even-index classes should match as printed".into()));
    }
    let detail = format!(
        "{checks} class computations; even-index classes match the printed formula, \
         odd-index classes need the top degree raised by one period (+N), and the \
         shift identities hold with the shift exponent negated{}",
        if printed_odd_ok { " (unexpectedly, printed odd also matched)" } else { "" }
    );
    Ok((true, checks, detail))
}

fn c12_generator_oracle(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 12);
    let mut checks = 0usize;
    for _ in 0..cfg.cases {
        let n = pick_n(&mut r);
        let field = pick_field(&mut r);
        let g = random_complex(n, field, -1, 2, 3, &mut r);
        if g.complex.homology_table() != implied_table(n, &g.blocks) {
            return Ok((false, checks, format!("table mismatch for blocks {:?}", g.blocks)));
        }
        checks += 1;
    }
    Ok((true, checks, format!("{checks} hidden decompositions recovered")))
}

/// Classical homology of a 2-complex by the rank-nullity formula — the
/// independent reference implementation for the N = 2 regression.
fn classical_h(x: &NComplex, i: i64) -> usize {
    (x.dim(i) - x.diff(i).rank()) - x.diff(i - 1).rank()
}

/// Classical mapping cone of `f : A -> B`: `C^m = B^m ⊕ A^{m+1}` with the
/// textbook differential `[[d_B, f], [0, -d_A]]`.
fn classical_cone(f: &ChainMap) -> NComplex {
    let (a, b) = (&f.source, &f.target);
    let field = a.field;
    if a.is_zero() && b.is_zero() {
        return NComplex::zero(2, field);
    }
    let lo = if b.is_zero() { a.min_degree - 1 } else { b.min_degree.min(a.min_degree - 1) };
    let hi = if a.is_zero() { b.max_degree() } else { b.max_degree().max(a.max_degree() - 1) };
    let dims: Vec<usize> = (lo..=hi).map(|m| b.dim(m) + a.dim(m + 1)).collect();
    let diffs: Vec<Matrix> = (lo..hi)
        .map(|m| {
            Matrix::from_blocks(
                field,
                &[b.dim(m + 1), a.dim(m + 2)],
                &[b.dim(m), a.dim(m + 1)],
                &[
                    (0, 0, b.diff(m)),
                    (0, 1, f.map_at(m + 1)),
                    (1, 1, a.diff(m + 1).neg()),
                ],
            )
        })
        .collect();
    NComplex::new(2, field, lo, dims, diffs).expect("classical cone shapes")
}

fn c13_classical(cfg: SuiteConfig) -> Result<(bool, usize, String)> {
    let mut r = case_rng(cfg, 13);
    let mut checks = 0usize;
    let complexes = cfg.cases.min(100).max(1);
    for k in 0..complexes {
        let field = pick_field(&mut r);
        let x = random_complex(2, field, -1, 2, 3, &mut r).complex;
        let y = random_complex(2, field, -1, 2, 3, &mut r).complex;
        let window = -4..=4i64;

        for i in window.clone() {
            if x.homology_dim(i, 1) != classical_h(&x, i) {
                return Ok((false, checks, format!("homology drifted at degree {i}")));
            }
            checks += 1;
        }

        let f = random_chain_map(&x, &y, &mut r);
        let ours = cone(&f).c;
        let classical = classical_cone(&f);
        classical.validate()?;
        for i in window.clone() {
            if ours.homology_dim(i, 1) != classical_h(&classical, i) {
                return Ok((false, checks, format!("cone homology drifted at degree {i}")));
            }
            checks += 1;
        }

        let sx = suspend(&x);
        let cx = cosuspend(&x);
        for i in window.clone() {
            if sx.homology_dim(i, 1) != classical_h(&x, i + 1)
                || cx.homology_dim(i, 1) != classical_h(&x, i - 1)
            {
                return Ok((false, checks, format!("shift homology drifted at degree {i}")));
            }
            checks += 1;
        }

        if k % 2 == 0 {
            let ses = random_ses(2, field, -1, 1, 2, &mut r);
            let report = les_ses_check(&ses)?;
            if !report.exact {
                return Ok((false, checks, "classical homology sequence not exact".into()));
            }
            let of = |name: &str| -> &NComplex {
                match name {
                    "X" => ses.x(),
                    "Y" => ses.y(),
                    _ => ses.z(),
                }
            };
            for node in &report.nodes {
                if node.dim != classical_h(of(&node.object), node.degree) {
                    return Ok((false, checks, "ladder node dims drifted from classical".into()));
                }
                checks += 1;
            }
        }
    }
    Ok((true, checks, format!("{checks} classical comparisons agreed")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteConfig {
        SuiteConfig { seed: 7, cases: 12 }
    }

    #[test]
    fn every_criterion_passes_at_reduced_scale() {
        for res in run_all(quick()) {
            assert!(res.pass, "criterion {} failed: {}", res.id, res.detail);
            assert!(res.cases > 0, "criterion {} ran nothing", res.id);
        }
    }

    #[test]
    fn results_are_reproducible_from_the_seed() {
        let a = c12_generator_oracle(quick()).unwrap();
        let b = c12_generator_oracle(quick()).unwrap();
        assert_eq!(a.2, b.2);
    }

    #[test]
    fn a_panicking_body_is_reported_not_propagated() {
        fn boom(_: SuiteConfig) -> Result<(bool, usize, String)> {
            panic!("deliberate");
        }
        let res = run_one(99, "exploding", boom, quick());
        assert!(!res.pass);
        assert!(res.detail.contains("deliberate"));
    }
}
