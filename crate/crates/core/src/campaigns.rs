//! Verification campaigns: each compares computed values against
//! independently known ones and returns a [`VerificationReport`].
//!
//! Cases within a campaign, and campaigns within [`verify_all`], run on the
//! rayon pool; reports sort their cases by name, so output is independent of
//! scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::lattice_model::{stratify, PiModule};
use crate::matrix_schemes::{
    char_poly_coeffs, diagonal_restriction, e2_ideal, naive_special_ideal, GenericMatrix, S_operator,
};
use crate::multiplicities::{character_multiplicity, nearby_cycle_multiplicity, verify_tensor_vs_kostka};
use crate::orbits::{closure_leq, jordan_matrix, jordan_type_of, springer_fiber_count, FqMatrix, PartialFlagSpec};
use crate::partitions::{
    affine_orbit_dim, bounded_partitions, coinvariant_dim_formula, dominance_leq, enumerate_strata,
    generic_fiber_dim, nilpotent_orbit_dim, partitions_of, r_min, s_max, s_min, Partition,
};
use crate::polyring::{Field, FieldKind, Ideal, PrimeField, QuotientDimension};
use crate::report::{Case, Provenance, VerificationReport};
use crate::with_field;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignOptions {
    pub budgets: Budgets,
    pub seed: u64,
    /// Smaller parameter ranges for a fast smoke run.
    pub quick: bool,
    /// Record per-case wall-clock time; makes reports nondeterministic.
    pub timings: bool,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions { budgets: Budgets::default(), seed: DEFAULT_SEED, quick: false, timings: false }
    }
}

/// Runs `f`, stamping each produced case with the elapsed time when `on`.
fn timed<C: IntoIterator<Item = Case>>(on: bool, f: impl FnOnce() -> C) -> Vec<Case> {
    let start = Instant::now();
    let cases: Vec<Case> = f().into_iter().collect();
    if !on {
        return cases;
    }
    let ms = start.elapsed().as_millis().to_string();
    cases.into_iter().map(|c| Case { elapsed_ms: Some(ms.clone()), ..c }).collect()
}

/// A case whose computation may fail; errors become failed or
/// budget-exceeded cases carrying the message.
fn case(
    name: String,
    parameters: &[(&str, String)],
    expected: impl ToString,
    provenance: Provenance,
    computed: Result<String>,
) -> Case {
    match computed {
        Ok(c) => Case::compare(name, parameters, expected, provenance, c),
        Err(e) => Case::error(name, parameters, expected, provenance, &e),
    }
}

fn format_dim(d: QuotientDimension) -> String {
    match d {
        QuotientDimension::Finite(n) => n.to_string(),
        QuotientDimension::Infinite => "infinite".into(),
    }
}

/// Length of `k[X_1..X_r]/(e_1..e_r, X_i^e)`, obtained as the diagonal
/// restriction of the naive nilpotent ideal, against the closed formula.
pub fn coinvariant_case(r: u32, e: u32, field: FieldKind, budgets: &Budgets) -> Case {
    let computed = with_field!(field, |f| {
        naive_special_ideal(r as usize, e, f)
            .and_then(|i| diagonal_restriction(&i.ideal))
            .and_then(|d| d.with_budgets(*budgets).quotient_dimension())
            .map(format_dim)
    });
    case(
        format!("coinvariant r={r} e={e} field={field}"),
        &[("r", r.to_string()), ("e", e.to_string()), ("field", field.to_string())],
        coinvariant_dim_formula(r, e),
        Provenance::Derived,
        computed,
    )
}

pub fn coinvariant_campaign(opts: &CampaignOptions) -> VerificationReport {
    let pairs: &[(u32, u32)] =
        if opts.quick { &[(2, 2), (3, 2), (2, 3)] } else { &[(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3)] };
    let jobs: Vec<(u32, u32, FieldKind)> = pairs
        .iter()
        .flat_map(|&(r, e)| [FieldKind::Rationals, FieldKind::Prime(503)].map(|f| (r, e, f)))
        .collect();
    let cases = jobs.par_iter().flat_map_iter(|&(r, e, f)| timed(opts.timings, || [coinvariant_case(r, e, f, &opts.budgets)])).collect();
    VerificationReport::new("coinvariant", &opts.budgets, cases)
}

fn lemma_holds<F: Field>(field: F, r: usize, budgets: &Budgets) -> Result<bool> {
    let g = GenericMatrix::new(field, r);
    let a = g.matrix();
    let mut s_gens = Vec::new();
    for t in 1..=r {
        s_gens.extend(S_operator(a, t, r + 1 - t)?.matrix().entries().iter().cloned());
    }
    let s = Ideal::new(g.ring(), s_gens)?.with_budgets(*budgets);
    let sigma = Ideal::new(g.ring(), char_poly_coeffs(a)?)?.with_budgets(*budgets);
    s.equals(&sigma)
}

/// `(Sᵗ_h(A) : t + h = r + 1) = (σ_1(A), …, σ_r(A))`.
pub fn dcp_lemma_case(r: u32, field: FieldKind, budgets: &Budgets) -> Case {
    let computed = with_field!(field, |f| lemma_holds(f, r as usize, budgets).map(|b| b.to_string()));
    case(
        format!("dcp-lemma r={r} field={field}"),
        &[("r", r.to_string()), ("field", field.to_string())],
        true,
        Provenance::Paper,
        computed,
    )
}

pub fn dcp_lemma_campaign(opts: &CampaignOptions) -> VerificationReport {
    let cases = [2u32, 3]
        .par_iter()
        .flat_map_iter(|&r| timed(opts.timings, || [dcp_lemma_case(r, FieldKind::Rationals, &opts.budgets)]))
        .collect();
    VerificationReport::new("dcp-lemma", &opts.budgets, cases)
}

fn kostant_holds<F: Field>(field: F, r: usize, e: u32, budgets: &Budgets) -> Result<bool> {
    let g = GenericMatrix::new(field, r);
    let sigma = Ideal::new(g.ring(), char_poly_coeffs(g.matrix())?)?.with_budgets(*budgets);
    for entry in g.matrix().pow(e).entries() {
        if !sigma.contains_element(entry)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `r ≤ e` every entry of `A^e` lies in `(σ_1(A), …, σ_r(A))`.
pub fn kostant_case(r: u32, e: u32, field: FieldKind, budgets: &Budgets) -> Case {
    let computed = if r > e {
        Err(Error::Range(format!("need r <= e, got r={r} e={e}")))
    } else {
        with_field!(field, |f| kostant_holds(f, r as usize, e, budgets).map(|b| b.to_string()))
    };
    case(
        format!("kostant r={r} e={e} field={field}"),
        &[("r", r.to_string()), ("e", e.to_string()), ("field", field.to_string())],
        true,
        Provenance::Paper,
        computed,
    )
}

pub fn kostant_campaign(opts: &CampaignOptions) -> VerificationReport {
    let cases = [2u32, 3]
        .par_iter()
        .flat_map_iter(|&r| timed(opts.timings, || [kostant_case(r, r, FieldKind::Rationals, &opts.budgets)]))
        .collect();
    VerificationReport::new("kostant", &opts.budgets, cases)
}

/// Nearby-cycle multiplicities against symmetric-group characters for all
/// `s, rvec ⊢ r`; one case per `r` counting the agreeing pairs.
fn multiplicity_case(r: u32) -> Case {
    let parts = partitions_of(r);
    let computed = (|| {
        let mut agree = 0u64;
        let mut first_mismatch = None;
        for s in &parts {
            for rvec in &parts {
                let k = nearby_cycle_multiplicity(s, rvec)?.multiplicity;
                let c = character_multiplicity(s, rvec)?;
                if k == c {
                    agree += 1;
                } else if first_mismatch.is_none() {
                    first_mismatch = Some(format!("s={s} rvec={rvec}: {k} vs {c}"));
                }
            }
        }
        Ok((agree, first_mismatch))
    })();
    let total = parts.len() * parts.len();
    let name = format!("nearby-vs-character r={r}");
    let p = [("r", r.to_string())];
    match computed {
        Ok((agree, mismatch)) => {
            let c = Case::compare(name, &p, total, Provenance::Derived, agree);
            match mismatch {
                Some(m) => c.with_note(m),
                None => c,
            }
        }
        Err(e) => Case::error(name, &p, total, Provenance::Derived, &e),
    }
}

/// Kostka identity for the minuscule tensor table; one case per `(d, rvec)`
/// counting its passing checks.
fn tensor_case(d: u32, rvec: &Partition) -> Case {
    let name = format!("tensor-kostka d={d} rvec={rvec}");
    let p = [("d", d.to_string()), ("rvec", rvec.to_string())];
    match verify_tensor_vs_kostka(d, rvec) {
        Ok(report) => {
            let c = Case::compare(name, &p, report.cases.len(), Provenance::Derived, report.cases.iter().filter(|c| c.passed()).count());
            match report.failures().next() {
                Some(f) => c.with_note(format!("{}: expected {} got {}", f.name, f.expected.value, f.computed)),
                None => c,
            }
        }
        Err(e) => Case::error(name, &p, "all", Provenance::Derived, &e),
    }
}

pub fn multiplicity_campaign(opts: &CampaignOptions) -> VerificationReport {
    let max_r = if opts.quick { 5 } else { 6 };
    let mut cases: Vec<Case> = (1..=max_r).into_par_iter().flat_map_iter(|r| timed(opts.timings, || [multiplicity_case(r)])).collect();
    let mut tensor_jobs = Vec::new();
    for d in 1..=4u32 {
        for e in 1..=3usize {
            for total in e as u32..=e as u32 * d {
                for rvec in bounded_partitions(total, e, d) {
                    if rvec.len() == e {
                        tensor_jobs.push((d, rvec));
                    }
                }
            }
        }
    }
    cases.extend(tensor_jobs.par_iter().flat_map_iter(|(d, rvec)| timed(opts.timings, || [tensor_case(*d, rvec)])).collect::<Vec<_>>());
    VerificationReport::new("multiplicities", &opts.budgets, cases)
}

/// Dimension identities over `S⁰(r, e, d)`:
/// `⟨s, 2ρ⟩ + r² − rd = r² − Σ (s∨)_i²` for every stratum, the
/// special-fiber dimension against `⟨s_max, 2ρ⟩`, and the generic fiber
/// `Σ r_i(d − r_i)` at `r_min` against the special fiber.
fn dimension_cases(r: u32, e: u32, d: u32) -> Vec<Case> {
    let p = [("r", r.to_string()), ("e", e.to_string()), ("d", d.to_string())];
    let tag = format!("r={r:02} e={e} d={d}");
    let strata = match enumerate_strata(r, e, d) {
        Ok(s) => s,
        Err(err) => return vec![Case::error(format!("orbit-dimension {tag}"), &p, "-", Provenance::Paper, &err)],
    };
    let (ri, di) = (i64::from(r), i64::from(d));
    let identity = strata
        .members
        .iter()
        .filter(|s| affine_orbit_dim(s, d).map(|a| a + ri * ri - ri * di) == Ok(nilpotent_orbit_dim(s)))
        .count();
    let special = crate::partitions::special_fiber_dim(r, e, d);
    vec![
        Case::compare(format!("orbit-dimension {tag}"), &p, strata.members.len(), Provenance::Paper, identity),
        case(
            format!("special-fiber {tag}"),
            &p,
            special.as_ref().map_or("-".into(), i64::to_string),
            Provenance::Paper,
            affine_orbit_dim(&s_max(r, e), d).map(|x| x.to_string()),
        ),
        case(
            format!("generic-fiber {tag}"),
            &p,
            special.as_ref().map_or("-".into(), i64::to_string),
            Provenance::Derived,
            generic_fiber_dim(&r_min(r, e), d).map(|x| x.to_string()),
        ),
    ]
}

pub fn dimension_campaign(opts: &CampaignOptions) -> VerificationReport {
    let (max_r, max_e, max_d) = if opts.quick { (6, 3, 4) } else { (10, 5, 6) };
    let mut jobs = Vec::new();
    for r in 1..=max_r {
        for e in 1..=max_e {
            for d in 1..=max_d {
                if r <= e * d {
                    jobs.push((r, e, d));
                }
            }
        }
    }
    let cases = jobs.par_iter().flat_map_iter(|&(r, e, d)| timed(opts.timings, || dimension_cases(r, e, d))).collect();
    VerificationReport::new("dimensions", &opts.budgets, cases)
}

fn format_strata(strata: &BTreeMap<Partition, u64>) -> String {
    strata.iter().rev().map(|(s, n)| format!("{s}:{n}")).collect::<Vec<_>>().join(" ")
}

/// `k[Π]/Π^e ⊕ k` at `r = e`: `p` points of type `(e)` and one of type
/// `(e−1, 1)`.
pub fn inhomogeneous_case(e: u32, p: u64, budgets: &Budgets) -> Case {
    let expected = BTreeMap::from([(Partition::new(vec![e]).unwrap(), p), (Partition::new(vec![e - 1, 1]).unwrap(), 1)]);
    let computed = PrimeField::new(p)
        .and_then(|f| PiModule::new(f, vec![e, 1]))
        .and_then(|w| stratify(&w, e as usize, budgets.max_enumeration))
        .map(|s| format_strata(&s));
    case(
        format!("inhomogeneous e={e} p={p}"),
        &[("e", e.to_string()), ("p", p.to_string())],
        format_strata(&expected),
        Provenance::Paper,
        computed,
    )
}

/// Strata of `(k[Π]/Π^e)^d` over `𝔽ₚ`: the key set is `S⁰(r, e, d)`, the
/// minimal stratum is present, and the maximal one is strictly the largest.
pub fn homogeneous_cases(r: u32, e: u32, d: u32, p: u64, budgets: &Budgets) -> Vec<Case> {
    let tag = format!("r={r} e={e} d={d} p={p}");
    let params = [("r", r.to_string()), ("e", e.to_string()), ("d", d.to_string()), ("p", p.to_string())];
    let run = || -> Result<(BTreeMap<Partition, u64>, Vec<Partition>)> {
        let w = PiModule::homogeneous(PrimeField::new(p)?, e, d as usize)?;
        Ok((stratify(&w, r as usize, budgets.max_enumeration)?, enumerate_strata(r, e, d)?.members))
    };
    match run() {
        Err(err) => vec![Case::error(format!("homogeneous {tag}"), &params, "-", Provenance::Derived, &err)],
        Ok((strata, members)) => {
            let keys = |v: Vec<&Partition>| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let max = members[0].clone();
            let max_count = strata.get(&max).copied().unwrap_or(0);
            let strictly_largest = strata.iter().all(|(s, &n)| *s == max || n < max_count);
            vec![
                Case::compare(
                    format!("homogeneous-keys {tag}"),
                    &params,
                    keys(members.iter().collect()),
                    Provenance::Derived,
                    keys(strata.keys().rev().collect()),
                ),
                Case::compare(
                    format!("homogeneous-min-present {tag}"),
                    &params,
                    true,
                    Provenance::Paper,
                    strata.contains_key(&s_min(r, d)),
                ),
                Case::compare(
                    format!("homogeneous-max-largest {tag}"),
                    &params,
                    true,
                    Provenance::Paper,
                    strictly_largest,
                )
                .with_note(format_strata(&strata)),
            ]
        }
    }
}

pub fn lattice_campaign(opts: &CampaignOptions) -> VerificationReport {
    let b = &opts.budgets;
    let mut cases: Vec<Case> =
        [(3u32, 2u64), (3, 3), (4, 2), (4, 3)]
        .par_iter()
        .flat_map_iter(|&(e, p)| timed(opts.timings, || [inhomogeneous_case(e, p, b)]))
        .collect();
    let triples: &[(u32, u32, u32)] = if opts.quick { &[(2, 2, 2)] } else { &[(2, 2, 2), (3, 2, 2), (2, 2, 3)] };
    cases.extend(triples
            .par_iter()
            .flat_map_iter(|&(r, e, d)| timed(opts.timings, || homogeneous_cases(r, e, d, 2, b)))
            .collect::<Vec<_>>());
    VerificationReport::new("lattice", b, cases)
}

/// Nonemptiness of the flag variety of `J_s` with shape `rvec` over `𝔽ₚ`,
/// against `s ≤ dual(rvec)`.
pub fn springer_case(s: &Partition, rvec: &Partition, p: u64, budgets: &Budgets) -> Case {
    let computed = (|| {
        let a = jordan_matrix(s, &PrimeField::new(p)?);
        let n = springer_fiber_count(&a, &PartialFlagSpec::new(rvec.clone()), budgets.max_enumeration)?;
        Ok(if n.count > 0 { "nonempty" } else { "empty" }.to_string())
    })();
    let expected = match dominance_leq(s, &rvec.dual()) {
        Ok(true) => "nonempty",
        Ok(false) => "empty",
        Err(_) => "-",
    };
    case(
        format!("springer p={p} s={s} rvec={rvec}"),
        &[("s", s.to_string()), ("rvec", rvec.to_string()), ("p", p.to_string())],
        expected,
        Provenance::Derived,
        computed,
    )
}

pub fn springer_campaign(opts: &CampaignOptions) -> VerificationReport {
    let max_r = if opts.quick { 3 } else { 4 };
    let jobs: Vec<(Partition, Partition)> = (1..=max_r)
        .flat_map(|r| {
            let parts = partitions_of(r);
            parts.iter().flat_map(|s| parts.iter().map(move |v| (s.clone(), v.clone()))).collect::<Vec<_>>()
        })
        .collect();
    let cases = jobs.par_iter().flat_map_iter(|(s, rvec)| timed(opts.timings, || [springer_case(s, rvec, 2, &opts.budgets)])).collect();
    VerificationReport::new("springer", &opts.budgets, cases)
}

/// All `3 × 3` matrices over `𝔽₂` on the zero set of the `(r_1, r_2) = (2, 1)`
/// equations, against a brute-force count of `A² = 0` with Jordan type
/// `≤ (2, 1)`.
pub fn e2_point_cases() -> Vec<Case> {
    let run = || -> Result<(u64, u64, bool)> {
        let f2 = PrimeField::new(2)?;
        let ideal = e2_ideal(2, 1, f2)?;
        let target = Partition::new(vec![2, 1])?;
        let (mut solutions, mut brute, mut shape_ok) = (0u64, 0u64, true);
        for bits in 0u32..512 {
            let a = FqMatrix::from_fn(&f2, 3, 3, |i, j| u64::from((bits >> (3 * i + j)) & 1));
            let square_zero = a.mul(&a).is_zero();
            if square_zero && closure_leq(&jordan_type_of(&a)?, &target)? {
                brute += 1;
            }
            let vals: Vec<u64> = (0..9).map(|k| *a.get(k / 3, k % 3)).collect();
            if ideal.ideal.generators().iter().all(|g| evaluate(g, &vals, &f2)) {
                solutions += 1;
                shape_ok &= square_zero && a.rank() <= 1;
            }
        }
        Ok((solutions, brute, shape_ok))
    };
    let p = [("r1", "2".to_string()), ("r2", "1".to_string()), ("p", "2".to_string())];
    match run() {
        Ok((solutions, brute, shape_ok)) => vec![
            Case::compare("e2-points count", &p, brute, Provenance::Derived, solutions),
            Case::compare("e2-points shape", &p, true, Provenance::Derived, shape_ok),
        ],
        Err(e) => vec![Case::error("e2-points", &p, "-", Provenance::Derived, &e)],
    }
}

/// Whether `g` vanishes at the point with coordinates `vals`.
fn evaluate(g: &crate::polyring::Polynomial<PrimeField>, vals: &[u64], f: &PrimeField) -> bool {
    let total = g.terms().iter().fold(0u64, |acc, (m, c)| {
        let v = m.exps().iter().zip(vals).fold(*c, |t, (&e, &x)| (0..e).fold(t, |t, _| f.mul(&t, &x)));
        f.add(&acc, &v)
    });
    total == 0
}

/// Jordan types are invariant under random conjugation over `𝔽₅`.
pub fn conjugation_case(seed: u64, samples: usize) -> Case {
    let run = || -> Result<usize> {
        let f5 = PrimeField::new(5)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let types: Vec<Partition> = (1..=4).flat_map(partitions_of).collect();
        let mut ok = 0;
        for k in 0..samples {
            let s = &types[k % types.len()];
            let r = s.size() as usize;
            let g = loop {
                let g = FqMatrix::from_fn(&f5, r, r, |_, _| rng.gen_range(0..5));
                if let Some(inv) = g.inverse() {
                    break (g, inv);
                }
            };
            let a = g.0.mul(&jordan_matrix(s, &f5)).mul(&g.1);
            if jordan_type_of(&a)? == *s {
                ok += 1;
            }
        }
        Ok(ok)
    };
    case(
        "conjugation-invariance".into(),
        &[("seed", seed.to_string()), ("samples", samples.to_string())],
        samples,
        Provenance::Trivial,
        run().map(|n| n.to_string()),
    )
}

pub fn orbit_campaign(opts: &CampaignOptions) -> VerificationReport {
    let mut cases = timed(opts.timings, e2_point_cases);
    cases.extend(timed(opts.timings, || [conjugation_case(opts.seed, 25)]));
    VerificationReport::new("orbits", &opts.budgets, cases)
}

/// Every campaign, merged into one report.
pub fn verify_all(opts: &CampaignOptions) -> VerificationReport {
    let campaigns: Vec<fn(&CampaignOptions) -> VerificationReport> = vec![
        coinvariant_campaign,
        dcp_lemma_campaign,
        kostant_campaign,
        multiplicity_campaign,
        dimension_campaign,
        lattice_campaign,
        springer_campaign,
        orbit_campaign,
    ];
    let parts = campaigns.par_iter().map(|c| c(opts)).collect();
    let name = if opts.quick { "verify-all-quick" } else { "verify-all" };
    VerificationReport::merge(name, &opts.budgets, parts)
}
