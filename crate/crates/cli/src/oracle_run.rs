//! The `hloc oracle` corpus and its cross-check run.

use std::sync::Arc;

use hloc::oracle::{builtin_corpus, compare, select, Comparison, Instance};
use hloc::sampling::{random_invertible, random_unit};
use hloc::scenarios::two_adic_counterexample;
use hloc::{GModule, MatGroup, ResidueMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::spec_file::GroupSpecFile;

pub const RANDOM_INSTANCES: usize = 40;

/// Built-in instances, the 2-adic counterexample, and seeded random unit
/// groups on `Z/m` plus random cyclic groups on `(Z/2)^2` and `(Z/3)^2`.
pub fn corpus() -> hloc::Result<Vec<Instance>> {
    let mut out = builtin_corpus()?;
    let dz = two_adic_counterexample()?;
    out.push(Instance {
        name: "dz-p2".into(),
        module: dz.module,
    });
    let mut rng = StdRng::seed_from_u64(2024);
    let mut k = 0;
    while k < RANDOM_INSTANCES {
        let gens = if k % 4 == 3 {
            let m = rng.gen_range(2..=3u64);
            vec![random_invertible(m, 2, &mut rng)]
        } else {
            let m = rng.gen_range(3..=12u64);
            let count = rng.gen_range(1..=2);
            (0..count)
                .map(|_| ResidueMatrix::new(m, 1, 1, vec![random_unit(m, &mut rng)]))
                .collect::<hloc::Result<Vec<_>>>()?
        };
        let group = MatGroup::generated_by(gens)?;
        if group.order() == 1 {
            continue;
        }
        out.push(Instance {
            name: format!("random {k}"),
            module: Arc::new(GModule::natural(Arc::new(group))),
        });
        k += 1;
    }
    Ok(out)
}

#[derive(Debug)]
pub struct OracleRun {
    pub comparisons: Vec<(Instance, hloc::Result<Comparison>)>,
}

impl OracleRun {
    pub fn failures(&self) -> Vec<&(Instance, hloc::Result<Comparison>)> {
        self.comparisons
            .iter()
            .filter(|(_, c)| !matches!(c, Ok(c) if c.agrees()))
            .collect()
    }

    /// The failing instance with the smallest search space, as a spec file
    /// when the module is the natural one.
    pub fn minimal_failure(&self) -> Option<(&Instance, Option<GroupSpecFile>)> {
        self.failures()
            .into_iter()
            .min_by_key(|(i, _)| i.search_space())
            .map(|(i, _)| (i, i.is_natural().then(|| GroupSpecFile::from_group(i.module.group()))))
    }
}

pub fn run(max_group: usize, max_module: u128) -> hloc::Result<OracleRun> {
    let instances = select(corpus()?, max_group, max_module);
    let comparisons = instances
        .into_par_iter()
        .map(|i| {
            let c = compare(&i.name, &i.module);
            (i, c)
        })
        .collect();
    Ok(OracleRun { comparisons })
}

fn structure(f: &[u64]) -> String {
    if f.is_empty() {
        "0".into()
    } else {
        f.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

pub fn line(instance: &Instance, c: &hloc::Result<Comparison>) -> String {
    match c {
        Ok(c) if c.agrees() => format!(
            "agree {}: |G| = {}, |M| = {}, |Z1| = {}, |B1| = {}, H1 = {}, H1_loc = {}",
            instance.name,
            c.group_order,
            c.module_order,
            c.cocycles,
            c.coboundaries,
            structure(&c.h1),
            structure(&c.h1_loc)
        ),
        Ok(c) => format!("DISAGREE {}: {}", instance.name, c.mismatches.join("; ")),
        Err(e) => format!("ERROR {}: {e}", instance.name),
    }
}
