//! Named scenarios checked by `hloc verify-paper`, each a list of claims.

use std::sync::Arc;

use hloc::cohomology::{h1_loc, inflate, is_coboundary, satisfies_local_conditions};
use hloc::oracle::compare;
use hloc::sampling::random_stabilizer_subgroup;
use hloc::scenarios::{
    alpha_inverse, extension_cocycle, lambda_coordinates, lifted_extension, stabilizer_family_group, stabilizer_grid,
    two_adic_counterexample, unitriangular_normal_form, GaloisRingSpec, SCENARIO_NAMES,
};
use hloc::zmod::arith::is_prime;
use hloc::{AbelianStructure, GModule, MatGroup, ResidueMatrix};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

/// Random stabilizer subgroups checked per `(p, n)`.
pub const RANDOM_SUBGROUPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub scenario: &'static str,
    pub status: Status,
    pub statement: String,
    pub detail: String,
}

impl Claim {
    fn check(scenario: &'static str, statement: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            scenario,
            status: if passed { Status::Pass } else { Status::Fail },
            statement: statement.into(),
            detail: detail.into(),
        }
    }

    fn info(scenario: &'static str, statement: impl Into<String>) -> Self {
        Self {
            scenario,
            status: Status::Info,
            statement: statement.into(),
            detail: String::new(),
        }
    }

    fn error(scenario: &'static str, statement: impl Into<String>, e: hloc::Error) -> Self {
        Self::check(scenario, statement, false, format!("error: {e}"))
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        if self.detail.is_empty() {
            format!("{tag} {}: {}", self.scenario, self.statement)
        } else {
            format!("{tag} {}: {} ({})", self.scenario, self.statement, self.detail)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn structure(factors: &[u64]) -> String {
    AbelianStructure::new(factors.to_vec()).map_or_else(|_| format!("{factors:?}"), |s| s.to_string())
}

pub fn two_adic_claims() -> Vec<Claim> {
    const S: &str = "dz-p2";
    let dz = match two_adic_counterexample() {
        Ok(dz) => dz,
        Err(e) => return vec![Claim::error(S, "construct (Z/8)^*, Z and G_16", e)],
    };
    let mut out = Vec::new();
    let table: Vec<u64> = [1, 3, 5, 7]
        .iter()
        .map(|&a| dz.unit(a).map_or(u64::MAX, |g| dz.cocycle.value(g)[0]))
        .collect();
    out.push(Claim::check(
        S,
        "Z = (0, 4, 4, 0) on (g_1, g_3, g_5, g_7) is a cocycle on Z/8",
        table == [0, 4, 4, 0],
        format!("table {table:?}"),
    ));

    match satisfies_local_conditions(&dz.cocycle) {
        Ok(local) => {
            let witnesses: Vec<String> = [1u64, 3, 5, 7]
                .iter()
                .filter_map(|&a| {
                    let g = dz.unit(a)?;
                    let w = local.witnesses[g].as_ref()?;
                    Some(format!("g_{a}: m = {}", w[0]))
                })
                .collect();
            out.push(Claim::check(
                S,
                "Z satisfies the local conditions",
                local.holds(),
                witnesses.join(", "),
            ));
        }
        Err(e) => out.push(Claim::error(S, "Z satisfies the local conditions", e)),
    }
    match is_coboundary(&dz.cocycle) {
        Ok(w) => out.push(Claim::check(S, "Z is not a coboundary", w.is_none(), "")),
        Err(e) => out.push(Claim::error(S, "Z is not a coboundary", e)),
    }
    match (h1_loc(&dz.module), compare(S, &dz.module)) {
        (Ok(local), Ok(cmp)) => {
            out.push(Claim::check(
                S,
                "H1_loc((Z/8)^*, Z/8) is nontrivial",
                !local.is_trivial(),
                structure(local.invariant_factors()),
            ));
            out.push(Claim::check(
                S,
                format!(
                    "H1_loc matches brute-force enumeration of all {} maps",
                    cmp.search_space
                ),
                cmp.agrees() && cmp.h1_loc == local.invariant_factors(),
                if cmp.agrees() {
                    structure(&cmp.h1_loc)
                } else {
                    cmp.mismatches.join("; ")
                },
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(Claim::error(S, "H1_loc((Z/8)^*, Z/8) is nontrivial", e)),
    }

    let diagonal: Vec<ResidueMatrix> = [1, 3, 5, 7]
        .iter()
        .map(|&a| ResidueMatrix::new(8, 2, 2, vec![a, 0, 0, 1]).expect("modulus 8"))
        .collect();
    let diag_ok = dz.g8.order() == 4 && diagonal.iter().all(|d| dz.g8.contains(d));
    out.push(Claim::check(
        S,
        "G_16 mod 8 equals the diagonal copy of (Z/8)^*",
        diag_ok,
        format!("|G_16| = {}, |G_16 mod 8| = {}", dz.g16.order(), dz.g8.order()),
    ));

    match dz.inflated() {
        Ok(z) => {
            out.push(Claim::check(S, "inflation of Z to G_16 is a cocycle", true, ""));
            let local = satisfies_local_conditions(&z).map(|l| l.holds());
            out.push(Claim::check(
                S,
                "inflation of Z to G_16 satisfies the local conditions",
                local == Ok(true),
                "",
            ));
            let cob = is_coboundary(&z).map(|w| w.is_none());
            out.push(Claim::check(
                S,
                "inflation of Z to G_16 is not a coboundary",
                cob == Ok(true),
                "",
            ));
        }
        Err(e) => out.push(Claim::error(S, "inflation of Z to G_16 is a cocycle", e)),
    }
    out
}

/// Outcome for one group of the stabilizer sweep.
struct GroupCheck {
    fixes: bool,
    trivial: bool,
    round_trip: Option<bool>,
    label: String,
}

fn check_group(g: MatGroup, p: u64, label: String, with_normal_form: bool) -> hloc::Result<GroupCheck> {
    let fixes = g.fixes_vector(&[1, 0])?;
    let round_trip = if with_normal_form {
        let nf = unitriangular_normal_form(&g, p)?;
        Some(stabilizer_family_group(&nf.params)?.same_elements(&g))
    } else {
        None
    };
    let trivial = h1_loc(&Arc::new(GModule::natural(Arc::new(g))))?.is_trivial();
    Ok(GroupCheck {
        fixes,
        trivial,
        round_trip,
        label,
    })
}

fn summarize(
    out: &mut Vec<Claim>,
    scenario: &'static str,
    what: &str,
    results: Vec<hloc::Result<GroupCheck>>,
    with_normal_form: bool,
) {
    let total = results.len();
    let mut checks = Vec::new();
    for r in results {
        match r {
            Ok(c) => checks.push(c),
            Err(e) => {
                out.push(Claim::error(scenario, format!("{what}: computation"), e));
                return;
            }
        }
    }
    let failing = |f: &dyn Fn(&GroupCheck) -> bool| -> (usize, String) {
        let bad: Vec<&str> = checks.iter().filter(|c| !f(c)).map(|c| c.label.as_str()).collect();
        (bad.len(), bad.iter().take(3).copied().collect::<Vec<_>>().join("; "))
    };
    let (bad, ex) = failing(&|c| c.fixes);
    out.push(Claim::check(
        scenario,
        format!("{what}: every group fixes (1, 0)"),
        bad == 0,
        detail(total, bad, &ex),
    ));
    let (bad, ex) = failing(&|c| c.trivial);
    out.push(Claim::check(
        scenario,
        format!("{what}: H1_loc = 0"),
        bad == 0,
        detail(total, bad, &ex),
    ));
    if with_normal_form {
        let (bad, ex) = failing(&|c| c.round_trip == Some(true));
        out.push(Claim::check(
            scenario,
            format!("{what}: normal form regenerates the group"),
            bad == 0,
            detail(total, bad, &ex),
        ));
    }
}

fn detail(total: usize, bad: usize, examples: &str) -> String {
    if bad == 0 {
        format!("{total} groups")
    } else {
        format!("{bad} of {total} groups fail, e.g. {examples}")
    }
}

pub fn stabilizer_claims(p: u64, n: u32) -> Vec<Claim> {
    const S: &str = "prop21-family";
    let mut out = Vec::new();
    let grid = match stabilizer_grid(p, n) {
        Ok(g) => g,
        Err(e) => return vec![Claim::error(S, format!("grid p={p} n={n}"), e)],
    };
    let results: Vec<_> = grid
        .par_iter()
        .map(|params| {
            let label = format!("i={} e={} b={}", params.i, params.e, params.b);
            check_group(stabilizer_family_group(params)?, p, label, true)
        })
        .collect();
    summarize(&mut out, S, &format!("p={p} n={n} grid"), results, true);

    // seeds are fixed so the report is reproducible
    let mut rng = StdRng::seed_from_u64(p * 1000 + n as u64);
    let groups: Vec<hloc::Result<MatGroup>> = (0..RANDOM_SUBGROUPS)
        .map(|_| random_stabilizer_subgroup(p, n, &mut rng))
        .collect();
    let results: Vec<_> = groups
        .into_par_iter()
        .enumerate()
        .map(|(k, g)| {
            let g = g?;
            let label = format!(
                "sample {k} {:?}",
                g.generators().iter().map(|x| x.entries().to_vec()).collect::<Vec<_>>()
            );
            check_group(g, p, label, false)
        })
        .collect();
    summarize(&mut out, S, &format!("p={p} n={n} random subgroups"), results, false);
    out
}

pub fn extension_claims(p: u64) -> Vec<Claim> {
    const S: &str = "lemma51";
    let spec = match GaloisRingSpec::with_default_poly(p, 1) {
        Ok(s) => s,
        Err(e) => return vec![Claim::error(S, format!("F_{{{p}^2}} for p={p}"), e)],
    };
    let z = match extension_cocycle(&spec) {
        Ok(z) => z,
        Err(e) => return vec![Claim::error(S, format!("p={p}: Z is a cocycle"), e)],
    };
    let group = z.module().group().clone();
    let (c0, c1) = spec.min_poly;
    let mut out = vec![Claim::check(
        S,
        format!("p={p}: Z(sigma(l1, l2)) = (l2, 0) is a cocycle on H_1"),
        true,
        format!("|H_1| = {}, alpha^2 + {c1} alpha + {c0} = 0", group.order()),
    )];
    match satisfies_local_conditions(&z) {
        Ok(local) => {
            let mut detail = String::new();
            if let Ok((a, b)) = alpha_inverse(&spec) {
                let at = group.elements().iter().position(|g| lambda_coordinates(g) == (0, 1));
                let w = at.and_then(|g| local.witnesses[g].clone());
                detail = format!("witness at sigma(0, 1): {w:?}, alpha^-1 = {a} + {b} alpha");
            }
            out.push(Claim::check(
                S,
                format!("p={p}: Z satisfies the local conditions"),
                local.holds(),
                detail,
            ));
        }
        Err(e) => out.push(Claim::error(S, format!("p={p}: Z satisfies the local conditions"), e)),
    }
    match is_coboundary(&z) {
        Ok(w) => out.push(Claim::check(
            S,
            format!("p={p}: Z is not a coboundary"),
            w.is_none(),
            "",
        )),
        Err(e) => out.push(Claim::error(S, format!("p={p}: Z is not a coboundary"), e)),
    }
    match h1_loc(z.module()) {
        Ok(local) => out.push(Claim::check(
            S,
            format!("p={p}: H1_loc(H_1, F_{{{p}^2}}^2) is nontrivial"),
            !local.is_trivial(),
            structure(local.invariant_factors()),
        )),
        Err(e) => out.push(Claim::error(S, format!("p={p}: H1_loc is nontrivial"), e)),
    }
    out
}

pub fn lifted_claims(p: u64) -> Vec<Claim> {
    const S: &str = "prop54-h2";
    let lift = match lifted_extension(p) {
        Ok(l) => l,
        Err(e) => return vec![Claim::error(S, format!("p={p}: build H_2"), e)],
    };
    let mut out = vec![
        Claim::info(
            S,
            format!("p={p}: |H_2| = {} (closure over Z/{})", lift.lifted.order(), p * p),
        ),
        Claim::check(S, format!("p={p}: H_2 mod p equals H_1"), lift.reduces_to_unipotent, ""),
        Claim::check(
            S,
            format!("p={p}: h e_1 - e_1 = p Z(h mod p) for every h in H_2"),
            lift.first_column_matches_cocycle,
            "",
        ),
    ];
    let inflated = GaloisRingSpec::with_default_poly(p, 1)
        .and_then(|spec| extension_cocycle(&spec))
        .and_then(|z| {
            // re-index onto the unipotent group used by the reduction map
            let values = lift
                .unipotent
                .elements()
                .iter()
                .map(|e| z.value(z.module().group().index_of(e).expect("same group")).to_vec())
                .collect();
            let module = Arc::new(GModule::natural(lift.unipotent.clone()));
            let z = hloc::Cocycle::new(module, values)?;
            inflate(&z, lift.lifted.clone(), &lift.reduction)
        })
        .and_then(|z| {
            let local = satisfies_local_conditions(&z)?.holds();
            let nontrivial = is_coboundary(&z)?.is_none();
            Ok(local && nontrivial)
        });
    match inflated {
        Ok(ok) => out.push(Claim::check(
            S,
            format!("p={p}: Z inflated to H_2 through reduction is locally trivial and not a coboundary"),
            ok,
            "",
        )),
        Err(e) => out.push(Claim::error(S, format!("p={p}: inflation of Z to H_2"), e)),
    }
    out
}

fn odd_prime(p: u64) -> Result<u64, UsageError> {
    if p == 2 || !is_prime(p) {
        return Err(UsageError(format!("--p must be an odd prime, got {p}")));
    }
    Ok(p)
}

/// Claims for `scenario` (`None` or `"all"` runs everything). `p` and `n`
/// narrow the sweeps; both default to `{3, 5}` and `{1, 2}`.
pub fn run(scenario: Option<&str>, p: Option<u64>, n: Option<u32>) -> Result<Vec<Claim>, UsageError> {
    let name = scenario.unwrap_or("all");
    if name != "all" && !SCENARIO_NAMES.contains(&name) {
        return Err(UsageError(format!(
            "unknown scenario '{name}' (expected one of {}, all)",
            SCENARIO_NAMES.join(", ")
        )));
    }
    let primes = match p {
        Some(p) => vec![odd_prime(p)?],
        None => vec![3, 5],
    };
    let levels = match n {
        Some(0) => return Err(UsageError("--n must be at least 1".into())),
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let wants = |s: &str| name == "all" || name == s;
    let mut out = Vec::new();
    if wants("dz-p2") {
        out.extend(two_adic_claims());
    }
    if wants("prop21-family") {
        for &p in &primes {
            for &n in &levels {
                out.extend(stabilizer_claims(p, n));
            }
        }
    }
    if wants("lemma51") {
        for &p in &primes {
            out.extend(extension_claims(p));
        }
    }
    if wants("prop54-h2") {
        for &p in &primes {
            out.extend(lifted_claims(p));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_adic_claims_pass() {
        let claims = two_adic_claims();
        assert!(claims.len() >= 8);
        assert!(claims.iter().all(Claim::passed), "{:#?}", claims);
    }

    #[test]
    fn unknown_scenario_is_usage_error() {
        assert!(run(Some("nope"), None, None).is_err());
        assert!(run(Some("lemma51"), Some(4), None).is_err());
        assert!(run(Some("lemma51"), Some(2), None).is_err());
    }

    #[test]
    fn extension_and_lift_pass_for_three() {
        let claims: Vec<Claim> = extension_claims(3).into_iter().chain(lifted_claims(3)).collect();
        assert!(claims.iter().all(Claim::passed), "{:#?}", claims);
    }
}
