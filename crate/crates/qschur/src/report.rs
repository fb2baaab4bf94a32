//! Desk-scale verification runners shared by the command-line driver and
//! the integration suite. Each runner sweeps one family of checks and
//! returns a serializable report with one row per case.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{exact_rank, rank_of_vectors, solve_in_span, CoefficientSpec, LaurentPoly};
use crate::braiding::{
    params_from_alternating, verify_braid, verify_iwahori, AlternatingIntMatrix, ParamMatrix,
};
use crate::classical::{classical_lr, classical_schur_matrix};
use crate::filtration::{leading_term_check, DirectSumModule, SkewEmbedding};
use crate::schur::{box_map, build_schur_map, standard_basis, straighten};
use crate::shapes::{
    enumerate_standard, lr_coefficient, natural_order, partitions_up_to, subpartitions,
    Partition, SkewShape, Tableau,
};
use crate::algebras::TensorMonom;
use crate::Result;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SWEEP_MAX_SIZE: u32 = 6;
pub const SWEEP_MAX_FIRST: u32 = 3;
pub const SWEEP_MAX_LEN: usize = 3;
pub const SWEEP_ALPHABETS: [usize; 2] = [2, 3];
pub const DEFAULT_SEED: u64 = 271828;

#[derive(Serialize, Clone, Debug)]
pub struct CheckRow {
    pub case: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRow {
    pub fn pass(case: String) -> Self {
        CheckRow { case, ok: true, detail: None }
    }

    pub fn fail(case: String, detail: String) -> Self {
        CheckRow { case, ok: false, detail: Some(detail) }
    }

    pub fn of(case: String, outcome: std::result::Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Self::pass(case),
            Err(d) => Self::fail(case, d),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases: Vec<CheckRow>,
    pub passed: usize,
    pub failed: usize,
    pub status: String,
}

impl CheckReport {
    pub fn new(name: &str, seed: Option<u64>, cases: Vec<CheckRow>) -> Self {
        let passed = cases.iter().filter(|c| c.ok).count();
        let failed = cases.len() - passed;
        CheckReport {
            name: name.to_string(),
            seed,
            cases,
            passed,
            failed,
            status: if failed == 0 { "ok".into() } else { "VERIFICATION_FAILED".into() },
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// A deterministic non-unit parameter matrix: explicit exponents for two
/// letters (where derived matrices are forced trivial), a seeded derived
/// matrix otherwise.
pub fn nontrivial_params(letters: usize, seed: u64) -> ParamMatrix {
    match letters {
        0 | 1 => ParamMatrix::ones(letters),
        2 => ParamMatrix::from_exponents(vec![vec![0, 2], vec![-2, 0]]).unwrap(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            params_from_alternating(&AlternatingIntMatrix::random(letters - 1, 2, &mut rng))
        }
    }
}

/// Every skew pair within the sweep bounds, outer shapes in lexicographic
/// order, inner shapes in enumeration order.
pub fn sweep_shape_pairs() -> Vec<(Partition, Partition)> {
    let mut outers = partitions_up_to(SWEEP_MAX_SIZE, SWEEP_MAX_FIRST, SWEEP_MAX_LEN);
    outers.sort_by(|a, b| a.lex_cmp(b));
    let mut pairs = Vec::new();
    for lam in outers {
        for mu in subpartitions(&lam) {
            pairs.push((lam.clone(), mu));
        }
    }
    pairs
}

fn standard_count(shape: &SkewShape, n: usize) -> usize {
    enumerate_standard(shape, &natural_order(n)).len()
}

// ---------------------------------------------------------------------------
// criterion runners

/// Braid and quadratic identities for the braiding operator, on the unit
/// parameters and on seeded derived ones.
pub fn run_yb_checks(seed: u64) -> CheckReport {
    let mut cases = Vec::new();
    for n in [2usize, 3, 4] {
        let mut mats = vec![("ones".to_string(), ParamMatrix::ones(n))];
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        for k in 1..=3 {
            let u = AlternatingIntMatrix::random(n - 1, 2, &mut rng);
            mats.push((format!("U{k}"), params_from_alternating(&u)));
        }
        for (name, p) in mats {
            let braid = verify_braid(&p);
            let iwahori = verify_iwahori(&p);
            cases.push(CheckRow::of(
                format!("N={n} params={name}"),
                if braid && iwahori {
                    Ok(())
                } else {
                    Err(format!("braid={braid} iwahori={iwahori}"))
                },
            ));
        }
    }
    CheckReport::new("yang_baxter", Some(seed), cases)
}

/// The fixed row-to-column permutation of the (5,4,2)/(2,1) shape.
pub fn run_chi_fixture() -> CheckReport {
    let shape = SkewShape::new(
        Partition::new(vec![5, 4, 2]).unwrap(),
        Partition::new(vec![2, 1]).unwrap(),
    )
    .unwrap();
    let got = shape.chi_permutation();
    let want = vec![4usize, 6, 8, 2, 5, 7, 1, 3];
    let row = CheckRow::of(
        "chi (5,4,2)/(2,1)".into(),
        if got == want { Ok(()) } else { Err(format!("got {got:?}")) },
    );
    CheckReport::new("chi_fixture", None, vec![row])
}

fn sweep_cases() -> Vec<(Partition, Partition, usize, String, ParamMatrix)> {
    let mut cases = Vec::new();
    for (lam, mu) in sweep_shape_pairs() {
        for &n in &SWEEP_ALPHABETS {
            for (pname, p) in [
                ("ones".to_string(), ParamMatrix::ones(n)),
                ("derived".to_string(), nontrivial_params(n, DEFAULT_SEED ^ n as u64)),
            ] {
                cases.push((lam.clone(), mu.clone(), n, pname, p));
            }
        }
    }
    cases
}

/// Schur-map rank equals the count of standard tableaux on the whole sweep.
pub fn run_rank_sweep() -> CheckReport {
    let rows: Vec<CheckRow> = sweep_cases()
        .into_par_iter()
        .map(|(lam, mu, n, pname, p)| {
            let case = format!("{lam}/{mu} N={n} params={pname}");
            let outcome = (|| -> std::result::Result<(), String> {
                let shape = SkewShape::new(lam, mu).map_err(|e| e.to_string())?;
                let schur = build_schur_map(&shape, &p).map_err(|e| e.to_string())?;
                let rank =
                    schur.rank(&CoefficientSpec::Generic).map_err(|e| e.to_string())?;
                let count = standard_count(&shape, n);
                if rank != count {
                    return Err(format!("rank {rank}, standard count {count}"));
                }
                let mut reversed = natural_order(n);
                reversed.reverse();
                let rev = enumerate_standard(&shape, &reversed).len();
                if rev != count {
                    return Err(format!(
                        "{count} standard fillings, {rev} under the reversed order"
                    ));
                }
                Ok(())
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("rank_equals_standard_count", Some(DEFAULT_SEED), rows)
}

/// The exchange map composes to zero with the Schur map and the two ranks
/// add up to the wedge domain rank, on the whole sweep.
pub fn run_kernel_sweep() -> CheckReport {
    let rows: Vec<CheckRow> = sweep_cases()
        .into_par_iter()
        .map(|(lam, mu, n, pname, p)| {
            let case = format!("{lam}/{mu} N={n} params={pname}");
            let outcome = (|| -> std::result::Result<(), String> {
                let shape = SkewShape::new(lam, mu).map_err(|e| e.to_string())?;
                let schur = build_schur_map(&shape, &p).map_err(|e| e.to_string())?;
                let bx = box_map(&shape, &p).map_err(|e| e.to_string())?;
                let composite = schur.matrix.compose(&bx);
                if !composite.is_zero_map() {
                    return Err("composite with the Schur map is nonzero".into());
                }
                let spec = CoefficientSpec::Generic;
                let rank_box = exact_rank(&bx, &spec).map_err(|e| e.to_string())?;
                let rank_d = exact_rank(&schur.matrix, &spec).map_err(|e| e.to_string())?;
                let dim = schur.domain.rank();
                if rank_box + rank_d == dim {
                    Ok(())
                } else {
                    Err(format!("box {rank_box} + map {rank_d} != domain {dim}"))
                }
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("exchange_image_is_kernel", Some(DEFAULT_SEED), rows)
}

/// Standard-basis image vectors stay independent after specializing at the
/// 2nd, 3rd, and 4th cyclotomic polynomials, on the whole sweep.
pub fn run_root_of_unity_sweep() -> CheckReport {
    let rows: Vec<CheckRow> = sweep_cases()
        .into_par_iter()
        .map(|(lam, mu, n, pname, p)| {
            let case = format!("{lam}/{mu} N={n} params={pname}");
            let outcome = (|| -> std::result::Result<(), String> {
                let shape = SkewShape::new(lam, mu).map_err(|e| e.to_string())?;
                let schur = build_schur_map(&shape, &p).map_err(|e| e.to_string())?;
                let tabs = enumerate_standard(&shape, &natural_order(n));
                let vectors: Vec<BTreeMap<TensorMonom, LaurentPoly>> = tabs
                    .iter()
                    .map(|t| schur.matrix.column(&t.rows().to_vec()))
                    .collect();
                for l in [2u32, 3, 4] {
                    let rank = rank_of_vectors(&vectors, &CoefficientSpec::Cyclotomic(l))
                        .map_err(|e| e.to_string())?;
                    if rank != tabs.len() {
                        return Err(format!(
                            "rank {rank} of {} at cyclotomic({l})",
                            tabs.len()
                        ));
                    }
                }
                Ok(())
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("root_of_unity_rank_preserved", Some(DEFAULT_SEED), rows)
}

/// Layer counts match the independent classical computation, and the
/// standard-count dimension identity holds, on the whole sweep.
pub fn run_lr_checks() -> CheckReport {
    let rows: Vec<CheckRow> = sweep_shape_pairs()
        .into_par_iter()
        .map(|(lam, mu)| {
            let case = format!("{lam}/{mu}");
            let outcome = (|| -> std::result::Result<(), String> {
                let k = lam.size() - mu.size();
                let nus: Vec<Partition> = partitions_up_to(k, k, k as usize)
                    .into_iter()
                    .filter(|nu| nu.size() == k)
                    .collect();
                for nu in &nus {
                    let got = lr_coefficient(&lam, &mu, nu).map_err(|e| e.to_string())?;
                    let want = classical_lr(&lam, &mu, nu);
                    if got != want {
                        return Err(format!("coefficient at nu={nu}: {got} vs {want}"));
                    }
                }
                let shape = SkewShape::new(lam.clone(), mu.clone())
                    .map_err(|e| e.to_string())?;
                for &n in &SWEEP_ALPHABETS {
                    let skew = standard_count(&shape, n);
                    let mut total = 0usize;
                    for nu in &nus {
                        let gamma =
                            lr_coefficient(&lam, &mu, nu).map_err(|e| e.to_string())?;
                        if gamma == 0 {
                            continue;
                        }
                        total += gamma
                            * standard_count(&SkewShape::straight(nu.clone()), n);
                    }
                    if total != skew {
                        return Err(format!(
                            "dimension identity at N={n}: sum {total}, skew {skew}"
                        ));
                    }
                }
                Ok(())
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("layer_counts_and_dimensions", None, rows)
}

fn family_shapes() -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for lam in [vec![2u32, 1], vec![2, 2], vec![3, 1]] {
        let lam = Partition::new(lam).unwrap();
        for mu in subpartitions(&lam) {
            if mu.first() <= 2 {
                out.push((lam.clone(), mu));
            }
        }
    }
    out
}

fn family_param_pairs(n: usize, m: usize) -> Vec<(String, ParamMatrix, ParamMatrix)> {
    vec![
        ("ones".to_string(), ParamMatrix::ones(n), ParamMatrix::ones(m)),
        (
            "derived".to_string(),
            nontrivial_params(n, DEFAULT_SEED ^ 0x5eed),
            nontrivial_params(m, DEFAULT_SEED ^ 0xaaaa),
        ),
    ]
}

/// Occurrence counts of the auxiliary letters 1..=m in one monomial of the
/// sum module.
fn aux_content(label: &TensorMonom, m: usize) -> Vec<usize> {
    let mut counts = vec![0usize; m];
    for w in label {
        for &a in w {
            if (a as usize) <= m {
                counts[a as usize - 1] += 1;
            }
        }
    }
    counts
}

/// Layer generators count the layer coefficient, carry the leading-term
/// shape, keep the auxiliary content of the inner shape in every monomial,
/// and assemble into a spanning family that stays independent at roots of
/// unity.
pub fn run_family_checks() -> CheckReport {
    let mut cases = Vec::new();
    for (lam, mu) in family_shapes() {
        for &n in &SWEEP_ALPHABETS {
            for (pname, pv, paux) in family_param_pairs(n, mu.first() as usize) {
                cases.push((lam.clone(), mu.clone(), n, pname, pv, paux));
            }
        }
    }
    let rows: Vec<CheckRow> = cases
        .into_par_iter()
        .map(|(lam, mu, n, pname, pv, paux)| {
            let case = format!("{lam}/{mu} N={n} params={pname}");
            let outcome = (|| -> std::result::Result<(), String> {
                let ctx = SkewEmbedding::new(lam.clone(), mu.clone(), n, pv, paux)
                    .map_err(|e| e.to_string())?;
                let m = ctx.aux_letters();
                let mu_conj = mu.conjugate();
                let want: Vec<usize> = (1..=m).map(|j| mu_conj.part(j) as usize).collect();
                let k = lam.size() - mu.size();
                for nu in subpartitions(&lam) {
                    if nu.size() != k {
                        continue;
                    }
                    let gamma =
                        lr_coefficient(&lam, &mu, &nu).map_err(|e| e.to_string())?;
                    let gens = ctx.layer_generators(&nu).map_err(|e| e.to_string())?;
                    if gens.len() != gamma {
                        return Err(format!(
                            "nu={nu}: {} generators, layer count {gamma}",
                            gens.len()
                        ));
                    }
                    for g in &gens {
                        if !leading_term_check(&g.tableau, &g.element) {
                            return Err(format!(
                                "nu={nu}: leading term fails for {:?}",
                                g.tableau.rows()
                            ));
                        }
                        if g.element.terms.keys().any(|l| aux_content(l, m) != want) {
                            return Err(format!(
                                "nu={nu}: a generator monomial strays from content {want:?}"
                            ));
                        }
                    }
                }
                let entries = ctx.spanning_family().map_err(|e| e.to_string())?;
                ctx.verify_family(&entries).map_err(|e| e.to_string())?;
                for e in &entries {
                    if e.vector.keys().any(|l| aux_content(l, m) != want) {
                        return Err(format!(
                            "nu={}: a family monomial strays from content {want:?}",
                            e.nu
                        ));
                    }
                }
                let vectors: Vec<BTreeMap<TensorMonom, LaurentPoly>> =
                    entries.iter().map(|e| e.vector.clone()).collect();
                for l in [2u32, 3, 4] {
                    let rank = rank_of_vectors(&vectors, &CoefficientSpec::Cyclotomic(l))
                        .map_err(|e| e.to_string())?;
                    if rank != vectors.len() {
                        return Err(format!(
                            "family rank {rank} of {} at cyclotomic({l})",
                            vectors.len()
                        ));
                    }
                }
                Ok(())
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("spanning_family", Some(DEFAULT_SEED), rows)
}

/// Filtration layer ranks match the layer count times the straight module
/// rank, at the generic specialization and at the 2nd, 3rd, and 4th
/// cyclotomic polynomials.
pub fn run_filtration_checks() -> CheckReport {
    let mut cases = Vec::new();
    for (lam, mu) in family_shapes() {
        for &n in &SWEEP_ALPHABETS {
            for (pname, pv, paux) in family_param_pairs(n, mu.first() as usize) {
                cases.push((lam.clone(), mu.clone(), n, pname, pv, paux));
            }
        }
    }
    let rows: Vec<CheckRow> = cases
        .into_par_iter()
        .map(|(lam, mu, n, pname, pv, paux)| {
            let case = format!("{lam}/{mu} N={n} params={pname}");
            let outcome = (|| -> std::result::Result<(), String> {
                let ctx = SkewEmbedding::new(lam, mu, n, pv, paux)
                    .map_err(|e| e.to_string())?;
                for spec in [
                    CoefficientSpec::Generic,
                    CoefficientSpec::Cyclotomic(2),
                    CoefficientSpec::Cyclotomic(3),
                    CoefficientSpec::Cyclotomic(4),
                ] {
                    let report = ctx.filtration_verify(&spec).map_err(|e| e.to_string())?;
                    if !report.ok() {
                        let bad: Vec<String> = report
                            .layers
                            .iter()
                            .filter(|l| !l.ok)
                            .map(|l| {
                                format!(
                                    "nu={} quotient {} vs {}x{}",
                                    l.nu, l.quotient_rank, l.gamma, l.rank_l_nu
                                )
                            })
                            .collect();
                        return Err(format!("at {spec}: {}", bad.join("; ")));
                    }
                }
                Ok(())
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("filtration_layers", Some(DEFAULT_SEED), rows)
}

/// The direct-sum filtration's graded ranks factor as products of the two
/// one-alphabet ranks, for every middle shape, generically and at the 2nd,
/// 3rd, and 4th cyclotomic polynomials.
pub fn run_direct_sum_checks() -> CheckReport {
    let mut cases = Vec::new();
    for lam in [vec![2u32, 1], vec![2, 2]] {
        let lam = Partition::new(lam).unwrap();
        for (pname, left, right) in [
            ("ones".to_string(), ParamMatrix::ones(2), ParamMatrix::ones(2)),
            (
                "derived".to_string(),
                nontrivial_params(2, 0),
                ParamMatrix::from_exponents(vec![vec![0, -4], vec![4, 0]]).unwrap(),
            ),
        ] {
            cases.push((lam.clone(), pname, left, right));
        }
    }
    let rows: Vec<CheckRow> = cases
        .into_par_iter()
        .map(|(lam, pname, left, right)| {
            let case = format!("{lam}/0 n=2 m=2 params={pname}");
            let outcome = (|| -> std::result::Result<(), String> {
                let dsum = DirectSumModule::new(lam, Partition::empty(), &left, &right)
                    .map_err(|e| e.to_string())?;
                for spec in [
                    CoefficientSpec::Generic,
                    CoefficientSpec::Cyclotomic(2),
                    CoefficientSpec::Cyclotomic(3),
                    CoefficientSpec::Cyclotomic(4),
                ] {
                    let report = dsum.verify_all_layers(&spec).map_err(|e| e.to_string())?;
                    if !report.ok() {
                        let bad: Vec<String> = report
                            .layers
                            .iter()
                            .filter(|l| !l.ok)
                            .map(|l| {
                                format!(
                                    "gamma={} quotient {} vs {}x{}",
                                    l.gamma, l.quotient_rank, l.rank_left, l.rank_right
                                )
                            })
                            .collect();
                        return Err(format!("at {spec}: {}", bad.join("; ")));
                    }
                }
                Ok(())
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("direct_sum_layers", None, rows)
}

/// At unit parameters, ranks and straightening coefficients evaluated at
/// Q = 1 match the sign-based classical computation.
pub fn run_classical_limit_checks() -> CheckReport {
    let mut pairs = Vec::new();
    for lam in partitions_up_to(4, 4, 4) {
        for mu in subpartitions(&lam) {
            pairs.push((lam.clone(), mu));
        }
    }
    let one = BigRational::one();
    let rows: Vec<CheckRow> = pairs
        .into_par_iter()
        .flat_map(|(lam, mu)| {
            SWEEP_ALPHABETS
                .iter()
                .map(|&n| (lam.clone(), mu.clone(), n))
                .collect::<Vec<_>>()
        })
        .map(|(lam, mu, n)| {
            let case = format!("{lam}/{mu} N={n}");
            let outcome = (|| -> std::result::Result<(), String> {
                let shape = SkewShape::new(lam, mu).map_err(|e| e.to_string())?;
                let p = ParamMatrix::ones(n);
                let schur = build_schur_map(&shape, &p).map_err(|e| e.to_string())?;
                let cmatrix = classical_schur_matrix(&shape, n);
                let spec1 = CoefficientSpec::rational(1, 1).map_err(|e| e.to_string())?;
                let qrank = exact_rank(&schur.matrix, &spec1).map_err(|e| e.to_string())?;
                let crank = exact_rank(&cmatrix, &CoefficientSpec::Generic)
                    .map_err(|e| e.to_string())?;
                if qrank != crank {
                    return Err(format!("rank {qrank} at Q=1, classical {crank}"));
                }
                let count = standard_count(&shape, n);
                if count == 0 {
                    return Ok(());
                }
                let basis = standard_basis(&schur, &natural_order(n))
                    .map_err(|e| e.to_string())?;
                let cvecs: Vec<BTreeMap<TensorMonom, LaurentPoly>> = basis
                    .tableaux
                    .iter()
                    .map(|t| cmatrix.column(&t.rows().to_vec()))
                    .collect();
                for label in schur.domain.basis() {
                    let s = Tableau::new(shape.clone(), label.clone(), natural_order(n))
                        .map_err(|e| e.to_string())?;
                    let qexp = straighten(&schur, &basis, &s).map_err(|e| e.to_string())?;
                    let mut qdense = vec![BigRational::from_integer(0.into()); count];
                    for (t, c) in &qexp {
                        let idx = basis
                            .tableaux
                            .iter()
                            .position(|b| b.rows() == t.rows())
                            .expect("straightening returns basis tableaux");
                        qdense[idx] = c.evaluate(&one);
                    }
                    let ctarget = cmatrix.column(&label);
                    let csol = solve_in_span(&cvecs, &ctarget, &CoefficientSpec::Generic)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| "classical image escapes its span".to_string())?;
                    for (idx, coeff) in csol.coeffs.iter().enumerate() {
                        let cval = coeff
                            .to_laurent()
                            .map(|l| l.evaluate(&one))
                            .unwrap_or_else(|| BigRational::from_integer(0.into()));
                        if cval != qdense[idx] {
                            return Err(format!(
                                "straightening of {label:?} disagrees at index {idx}"
                            ));
                        }
                    }
                }
                Ok(())
            })();
            CheckRow::of(case, outcome)
        })
        .collect();
    CheckReport::new("classical_limit", None, rows)
}

// ---------------------------------------------------------------------------
// aggregate sweep

#[derive(Serialize, Clone, Debug)]
pub struct SweepReport {
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub total_cases: usize,
    pub failed_cases: usize,
    pub status: String,
}

/// Runs every verification family back to back.
pub fn run_sweep(seed: u64) -> SweepReport {
    let checks = vec![
        run_yb_checks(seed),
        run_chi_fixture(),
        run_rank_sweep(),
        run_kernel_sweep(),
        run_root_of_unity_sweep(),
        run_lr_checks(),
        run_family_checks(),
        run_filtration_checks(),
        run_direct_sum_checks(),
        run_classical_limit_checks(),
    ];
    let total_cases = checks.iter().map(|c| c.cases.len()).sum();
    let failed_cases = checks.iter().map(|c| c.failed).sum();
    SweepReport {
        seed,
        checks,
        total_cases,
        failed_cases,
        status: if failed_cases == 0 { "ok".into() } else { "VERIFICATION_FAILED".into() },
    }
}

// ---------------------------------------------------------------------------
// single-shape reports

#[derive(Serialize, Clone, Debug)]
pub struct SchurBasisReport {
    pub shape: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub params: String,
    pub rank: usize,
    pub standard_count: usize,
    pub kernel_rank: usize,
    pub status: String,
}

/// Rank, standard count, and kernel rank of one Schur map.
pub fn schur_basis_report(
    shape: &SkewShape,
    n: usize,
    params: &ParamMatrix,
    params_name: &str,
) -> Result<SchurBasisReport> {
    let schur = build_schur_map(shape, params)?;
    let spec = CoefficientSpec::Generic;
    let rank = schur.rank(&spec)?;
    let bx = box_map(shape, params)?;
    let kernel_rank = exact_rank(&bx, &spec)?;
    let standard = standard_count(shape, n);
    Ok(SchurBasisReport {
        shape: shape.to_string(),
        n,
        params: params_name.to_string(),
        rank,
        standard_count: standard,
        kernel_rank,
        status: if rank == standard && rank + kernel_rank == schur.domain.rank() {
            "ok".into()
        } else {
            "VERIFICATION_FAILED".into()
        },
    })
}

#[derive(Serialize, Clone, Debug)]
pub struct YbReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub params: String,
    pub braid: bool,
    pub iwahori: bool,
}

/// Braid and quadratic identity outcome for one parameter matrix.
pub fn yb_report(n: usize, params: &ParamMatrix, params_name: &str) -> YbReport {
    YbReport {
        n,
        params: params_name.to_string(),
        braid: verify_braid(params),
        iwahori: verify_iwahori(params),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct KernelReport {
    pub shape: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub params: String,
    pub composite_is_zero: bool,
    pub rank_exchange: usize,
    pub rank_map: usize,
    pub domain_rank: usize,
    pub status: String,
}

/// Kernel decomposition report for one shape: the exchange image must be
/// exactly the kernel of the Schur map.
pub fn kernel_report(
    shape: &SkewShape,
    n: usize,
    params: &ParamMatrix,
    params_name: &str,
) -> Result<KernelReport> {
    let schur = build_schur_map(shape, params)?;
    let bx = box_map(shape, params)?;
    let composite_is_zero = schur.matrix.compose(&bx).is_zero_map();
    let spec = CoefficientSpec::Generic;
    let rank_exchange = exact_rank(&bx, &spec)?;
    let rank_map = exact_rank(&schur.matrix, &spec)?;
    let domain_rank = schur.domain.rank();
    let ok = composite_is_zero && rank_exchange + rank_map == domain_rank;
    Ok(KernelReport {
        shape: shape.to_string(),
        n,
        params: params_name.to_string(),
        composite_is_zero,
        rank_exchange,
        rank_map,
        domain_rank,
        status: if ok { "ok".into() } else { "VERIFICATION_FAILED".into() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_fixture_passes() {
        assert!(run_chi_fixture().ok());
    }

    #[test]
    fn yb_checks_pass() {
        assert!(run_yb_checks(DEFAULT_SEED).ok());
    }

    #[test]
    fn sweep_pairs_include_empty_and_full_inner() {
        let pairs = sweep_shape_pairs();
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert!(pairs.iter().any(|(l, m)| l == &lam && m.is_empty()));
        assert!(pairs.iter().any(|(l, m)| l == &lam && m == &lam));
    }

    #[test]
    fn schur_basis_report_round_trips() {
        let shape = SkewShape::new(
            Partition::new(vec![2, 1]).unwrap(),
            Partition::new(vec![1]).unwrap(),
        )
        .unwrap();
        let rep = schur_basis_report(&shape, 2, &ParamMatrix::ones(2), "ones").unwrap();
        assert_eq!(rep.status, "ok");
        assert_eq!(rep.rank, rep.standard_count);
        let js = serde_json::to_string(&rep).unwrap();
        assert!(js.contains("\"standard_count\""));
    }

    #[test]
    fn direct_sum_checks_pass() {
        assert!(run_direct_sum_checks().ok());
    }
}
