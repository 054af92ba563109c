//! Property suites over a corpus of groups, run in parallel with an
//! order-stable report.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::character::{central_scalar, character_table};
use crate::corpus::{composable_homs, corpus, corpus_group};
use crate::error::{Error, Result};
use crate::group::{commuting_tuples, direct_product, FiniteGroup, GSet, GroupHom};
use crate::io::parse_group;
use crate::laurent::{lambda_basis, LaurentPoly};
use crate::loop_groupoid::{iterated_component_count, lambda_skeleton};
use crate::quasi::{
    change_of_group, kunneth, qk_compute, restriction_from, verify_free_action,
    verify_trivial_action_split, QTheoryClass,
};

pub const SUITES: [&str; 7] = [
    "freeness",
    "kunneth",
    "change-of-group",
    "free-action",
    "trivial-action",
    "lambda-iter",
    "ring-axioms",
];

/// Randomized trials per check where a property is sampled.
pub const RANDOM_TRIALS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    CapExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn cap_exceeded(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::CapExceeded)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

/// A named group; the built-in corpus or groups read from disk.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .map(|(n, g)| CorpusEntry {
            name: n.to_string(),
            group: g,
        })
        .collect()
}

/// Reads a directory of group files (named by file stem) or a single JSON
/// array of `{"name", "degree", "generators"}` objects.
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        return files
            .into_iter()
            .map(|p| {
                Ok(CorpusEntry {
                    name: p
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_default(),
                    group: Arc::new(parse_group(&std::fs::read_to_string(&p)?)?),
                })
            })
            .collect();
    }
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)
        .map_err(|e| Error::input("corpus", e.to_string()))?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input("corpus", "expected an array of groups or a directory"))?;
    arr.iter()
        .enumerate()
        .map(|(i, g)| {
            let name = g
                .get("name")
                .and_then(|n| n.as_str())
                .map(str::to_string)
                .unwrap_or_else(|| format!("group{i}"));
            let group = parse_group(&g.to_string()).map_err(|e| match e {
                Error::Input { field, message } => {
                    Error::input(format!("corpus[{i}].{field}"), message)
                }
                other => other,
            })?;
            Ok(CorpusEntry {
                name,
                group: Arc::new(group),
            })
        })
        .collect()
}

/// Expected and actual renderings of a comparison.
struct Verdict {
    expected: String,
    actual: String,
    ok: bool,
}

type Outcome = Result<Verdict>;

struct Check {
    suite: &'static str,
    name: String,
    run: Box<dyn Fn(&mut StdRng) -> Outcome + Send + Sync>,
}

fn check(
    suite: &'static str,
    name: String,
    run: impl Fn(&mut StdRng) -> Outcome + Send + Sync + 'static,
) -> Check {
    Check {
        suite,
        name,
        run: Box::new(run),
    }
}

fn seed_for(name: &str) -> u64 {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    h.finish()
}

fn eq<T: std::fmt::Debug + PartialEq>(expected: T, actual: T) -> Outcome {
    Ok(Verdict {
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
        ok: expected == actual,
    })
}

fn gsets(g: &Arc<FiniteGroup>) -> Vec<(&'static str, GSet)> {
    vec![
        ("pt", GSet::point(g.clone())),
        ("natural", GSet::natural(g.clone())),
        ("regular", GSet::regular(g.clone())),
    ]
}

/// `K = ⟨first non-identity element⟩` inside `H`, as used for the coset
/// `H`-set `H/K`; `K` is trivial when `H` is.
fn coset_subgroup(h: &FiniteGroup) -> Vec<usize> {
    if h.order() == 1 {
        vec![FiniteGroup::IDENTITY]
    } else {
        h.generated_by(&[1])
    }
}

fn freeness_checks(entries: &[CorpusEntry]) -> Vec<Check> {
    let mut out = Vec::new();
    for e in entries {
        for n in 1..=2 {
            let g = e.group.clone();
            out.push(check(
                "freeness",
                format!("{} n={n} basis", e.name),
                move |_| {
                    let mut bad = Vec::new();
                    let tuples = commuting_tuples(&g, n);
                    for sigma in &tuples {
                        let c = Arc::new(g.centralizer_of(&sigma.indices_in(&g)?));
                        let table = character_table(&c)?;
                        let basis = lambda_basis(&table, sigma)?;
                        if basis.len() != c.conjugacy_classes().len() {
                            bad.push(format!(
                                "{sigma:?}: {} != {}",
                                basis.len(),
                                c.conjugacy_classes().len()
                            ));
                        }
                        for b in &basis {
                            for (r, &l) in b.q_degree.fractions().iter().zip(sigma.orders()) {
                                if *r.numer() < 0
                                    || r.numer() >= r.denom()
                                    || l as i64 % r.denom() != 0
                                {
                                    bad.push(format!("{sigma:?}: degree {}", b.q_degree));
                                }
                            }
                        }
                    }
                    let actual = if bad.is_empty() {
                        "no violations".to_string()
                    } else {
                        bad.join("; ")
                    };
                    eq("no violations".to_string(), actual)
                },
            ));
            let g = e.group.clone();
            out.push(check(
                "freeness",
                format!("{} n={n} rank", e.name),
                move |_| {
                    let ring = qk_compute(&GSet::point(g.clone()), n)?;
                    eq(commuting_tuples(&g, n + 1).len(), ring.rank())
                },
            ));
        }
        let g = e.group.clone();
        out.push(check(
            "freeness",
            format!("{} character table", e.name),
            move |_| {
                let t = character_table(&g)?;
                let mut ok = true;
                for i in 0..t.len() {
                    for j in 0..t.len() {
                        ok &= t.inner_product(&t.row(i).values, &t.row(j).values)?
                            == i64::from(i == j);
                    }
                }
                let centre: Vec<usize> = (0..g.order()).filter(|&z| g.is_central(z)).collect();
                for row in 0..t.len() {
                    for &z in &centre {
                        for &w in &centre {
                            let s = central_scalar(&t, row, z)? + central_scalar(&t, row, w)?;
                            ok &= s - num_rational::Ratio::from_integer(s.to_integer())
                                == central_scalar(&t, row, g.mul(z, w))?;
                        }
                    }
                }
                let sum: u64 = t.rows().iter().map(|r| u64::from(r.degree).pow(2)).sum();
                eq((g.order() as u64, true), (sum, ok))
            },
        ));
    }
    out
}

fn kunneth_checks(entries: &[CorpusEntry]) -> Vec<Check> {
    let mut out = Vec::new();
    for a in entries {
        for b in entries {
            if a.group.order() * b.group.order() > 64 {
                continue;
            }
            for n in 1..=2 {
                let (g, h) = (a.group.clone(), b.group.clone());
                out.push(check(
                    "kunneth",
                    format!("{} x {} n={n}", a.name, b.name),
                    move |rng| {
                        let k = kunneth(
                            qk_compute(&GSet::point(g.clone()), n)?,
                            qk_compute(&GSet::point(h.clone()), n)?,
                        )?;
                        let mut balanced = true;
                        for _ in 0..RANDOM_TRIALS {
                            let x = QTheoryClass::random(k.left.clone(), rng);
                            let y = QTheoryClass::random(k.right.clone(), rng);
                            for i in 0..n {
                                let q = LaurentPoly::var(n, i);
                                balanced &=
                                    k.apply(&x.scale(&q), &y)? == k.apply(&x, &y.scale(&q))?;
                            }
                        }
                        eq(
                            (k.matrix.source_dim(), true, true),
                            (k.target.rank(), k.is_bijective(), balanced),
                        )
                    },
                ));
            }
        }
    }
    out
}

fn change_of_group_checks(entries: &[CorpusEntry]) -> Vec<Check> {
    let mut out = Vec::new();
    for e in entries {
        for (si, sub) in e.group.subgroups().into_iter().enumerate() {
            for xname in ["pt", "cosets", "regular"] {
                for n in 1..=2 {
                    let g = e.group.clone();
                    let sub = sub.clone();
                    let name = format!("{} H#{si}(|H|={}) X={xname} n={n}", e.name, sub.len());
                    out.push(check("change-of-group", name, move |rng| {
                        let h = Arc::new(g.subgroup(&sub));
                        let incl = GroupHom::inclusion(h.clone(), g.clone())?;
                        let x = match xname {
                            "pt" => GSet::point(h.clone()),
                            "regular" => GSet::regular(h.clone()),
                            _ => GSet::right_cosets(h.clone(), &coset_subgroup(&h))?,
                        };
                        let cg = change_of_group(g.clone(), &incl, &x, n)?;
                        let rho = &cg.rho;
                        let mut multiplicative = true;
                        for _ in 0..10 {
                            let a = QTheoryClass::random(rho.source.clone(), rng);
                            let b = QTheoryClass::random(rho.source.clone(), rng);
                            multiplicative &=
                                rho.apply(&a.mul(&b)?)? == rho.apply(&a)?.mul(&rho.apply(&b)?)?;
                        }
                        eq(
                            (rho.source.rank(), true, true),
                            (rho.target.rank(), cg.verify_iso(), multiplicative),
                        )
                    }));
                }
            }
        }
    }
    out
}

fn free_action_checks(entries: &[CorpusEntry]) -> Vec<Check> {
    let mut out = Vec::new();
    for e in entries {
        for n in 1..=2 {
            let g = e.group.clone();
            out.push(check(
                "free-action",
                format!("{} regular n={n}", e.name),
                move |_| eq(true, verify_free_action(&GSet::regular(g.clone()), n)?),
            ));
        }
    }
    out
}

/// `(G, H, X)` with `X` a `G`-set; `H` acts trivially on `X`.
fn trivial_action_triples(
    entries: &[CorpusEntry],
    builtin: bool,
) -> Vec<(String, Arc<FiniteGroup>, Arc<FiniteGroup>, &'static str)> {
    if builtin {
        let t = |g: &str, h: &str, x: &'static str| {
            (
                format!("{g} x {h} on {x}"),
                corpus_group(g).expect("corpus"),
                corpus_group(h).expect("corpus"),
                x,
            )
        };
        vec![
            t("Z2", "trivial", "regular"),
            t("Z2", "Z2", "regular"),
            t("trivial", "S3", "pt"),
            t("S3", "Z2", "natural"),
            t("Z3", "Z2", "pt"),
            t("Z2xZ2", "Z3", "natural"),
            t("D4", "Z2", "natural"),
            t("Q8", "Z2", "pt"),
            t("A4", "Z2", "natural"),
            t("S3", "Z4", "cosets"),
        ]
    } else {
        let z2 = corpus_group("Z2").expect("corpus");
        entries
            .iter()
            .map(|e| {
                (
                    format!("{} x Z2 on natural", e.name),
                    e.group.clone(),
                    z2.clone(),
                    "natural",
                )
            })
            .collect()
    }
}

fn trivial_action_checks(entries: &[CorpusEntry], builtin: bool) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, g, h, xname) in trivial_action_triples(entries, builtin) {
        for n in 1..=2 {
            let (g, h) = (g.clone(), h.clone());
            out.push(check(
                "trivial-action",
                format!("{name} n={n}"),
                move |_| {
                    let dp = direct_product(g.clone(), h.clone())?;
                    let xg = match xname {
                        "pt" => GSet::point(g.clone()),
                        "regular" => GSet::regular(g.clone()),
                        "natural" => GSet::natural(g.clone()),
                        _ => GSet::right_cosets(g.clone(), &coset_subgroup(&g))?,
                    };
                    let x = dp.product_gset(&xg, &GSet::point(h.clone()))?;
                    eq(true, verify_trivial_action_split(&dp, &x, n)?)
                },
            ));
        }
    }
    out
}

fn lambda_iter_checks(entries: &[CorpusEntry]) -> Vec<Check> {
    let mut out = Vec::new();
    for e in entries {
        let mut sets = gsets(&e.group);
        if let Ok(c) = GSet::right_cosets(e.group.clone(), &coset_subgroup(&e.group)) {
            sets.push(("cosets", c));
        }
        for (xname, x) in sets {
            for n in 1..=2 {
                let x = x.clone();
                out.push(check(
                    "lambda-iter",
                    format!("{} X={xname} n={n}", e.name),
                    move |_| {
                        eq(
                            iterated_component_count(&x, n),
                            lambda_skeleton(&x, n)?.len(),
                        )
                    },
                ));
            }
        }
    }
    out
}

fn ring_axiom_checks(entries: &[CorpusEntry], builtin: bool) -> Vec<Check> {
    let mut out = Vec::new();
    for e in entries {
        for (xname, x) in gsets(&e.group).into_iter().take(2) {
            for n in 1..=2 {
                let x = x.clone();
                out.push(check(
                    "ring-axioms",
                    format!("{} X={xname} n={n}", e.name),
                    move |rng| {
                        let r = qk_compute(&x, n)?;
                        let unit = QTheoryClass::unit(r.clone());
                        let mut ok = true;
                        for _ in 0..20 {
                            let a = QTheoryClass::random(r.clone(), rng);
                            let b = QTheoryClass::random(r.clone(), rng);
                            let c = QTheoryClass::random(r.clone(), rng);
                            ok &= a.mul(&b)? == b.mul(&a)?;
                            ok &= a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?;
                            ok &= a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?;
                            ok &= unit.mul(&a)? == a;
                            for i in 0..n {
                                let q = QTheoryClass::q(r.clone(), i);
                                let qa = q.mul(&a)?;
                                ok &= qa == a.scale(&LaurentPoly::var(n, i))
                                    && qa.is_zero() == a.is_zero();
                            }
                        }
                        eq(true, ok)
                    },
                ));
            }
        }
    }
    let chains: Vec<(String, GroupHom, GroupHom)> = if builtin {
        composable_homs()
            .into_iter()
            .map(|(n, a, b)| (n.to_string(), a, b))
            .collect()
    } else {
        entries
            .iter()
            .filter(|e| e.group.order() > 1)
            .map(|e| {
                let g = e.group.clone();
                let cyc = Arc::new(g.subgroup(&g.generated_by(&[1])));
                let triv = Arc::new(g.subgroup(&[FiniteGroup::IDENTITY]));
                (
                    format!("1 -> <g> -> {}", e.name),
                    GroupHom::inclusion(triv, cyc.clone()).expect("subgroup"),
                    GroupHom::inclusion(cyc, g).expect("subgroup"),
                )
            })
            .collect()
    };
    for (name, phi, psi) in chains {
        for (xname, n) in [("pt", 1), ("pt", 2), ("natural", 1)] {
            let (phi, psi) = (phi.clone(), psi.clone());
            out.push(check(
                "ring-axioms",
                format!("restriction {name} X={xname} n={n}"),
                move |rng| {
                    let k = psi.target().clone();
                    let x = if xname == "pt" {
                        GSet::point(k)
                    } else {
                        GSet::natural(k)
                    };
                    let top = qk_compute(&x, n)?;
                    let psi_star = restriction_from(&psi, top.clone())?;
                    let phi_star = restriction_from(&phi, psi_star.target.clone())?;
                    let both = restriction_from(&phi.then(&psi)?, top.clone())?;
                    let functorial = psi_star.matrix.compose(&phi_star.matrix) == both.matrix;
                    let mut multiplicative = true;
                    for _ in 0..RANDOM_TRIALS {
                        let a = QTheoryClass::random(top.clone(), rng);
                        let b = QTheoryClass::random(top.clone(), rng);
                        multiplicative &=
                            both.apply(&a.mul(&b)?)? == both.apply(&a)?.mul(&both.apply(&b)?)?;
                    }
                    eq((true, true), (functorial, multiplicative))
                },
            ));
        }
    }
    out
}

/// Runs a suite (or `all`) over the given corpus. `builtin` selects the fixed
/// homomorphism chains and trivial-action triples of the built-in corpus.
pub fn run_suite(suite: &str, entries: &[CorpusEntry], builtin: bool) -> Result<VerifyReport> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(Error::input("suite", format!("unknown suite `{other}`"))),
    };
    let mut checks = Vec::new();
    for s in names {
        checks.extend(match s {
            "freeness" => freeness_checks(entries),
            "kunneth" => kunneth_checks(entries),
            "change-of-group" => change_of_group_checks(entries),
            "free-action" => free_action_checks(entries),
            "trivial-action" => trivial_action_checks(entries, builtin),
            "lambda-iter" => lambda_iter_checks(entries),
            _ => ring_axiom_checks(entries, builtin),
        });
    }
    let results = checks
        .par_iter()
        .map(|c| {
            let mut rng = StdRng::seed_from_u64(seed_for(&c.name));
            let (expected, actual, status) = match (c.run)(&mut rng) {
                Ok(v) => (
                    v.expected,
                    v.actual,
                    if v.ok { Status::Pass } else { Status::Fail },
                ),
                Err(err) if err.is_cap_exceeded() => {
                    ("within cap".into(), err.to_string(), Status::CapExceeded)
                }
                Err(err) => ("no error".into(), err.to_string(), Status::Fail),
            };
            CheckResult {
                suite: c.suite.to_string(),
                name: c.name.clone(),
                expected,
                actual,
                status,
            }
        })
        .collect();
    Ok(VerifyReport { checks: results })
}
