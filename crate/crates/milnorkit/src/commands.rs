//! Subcommands and their dispatch onto the library.

use crate::report::Report;
use clap::{Args, Parser, Subcommand};
use milnor::arr::catalog::{catalog, default_instances, CATALOG_NAMES};
use milnor::arr::lattice::{betti_numbers, l2_histogram_json, IntersectionLattice};
use milnor::arr::{parse_arrangement_str, Arrangement};
use milnor::cover::double::{double_cover_os, OsModel};
use milnor::cover::{delta1_and_betti, milnor_fiber_h1, milnor_fiber_h1_from, monodromy_action_h1, DeltaMethod};
use milnor::error::{MilnorError, Result};
use milnor::fox::catalog::{presentation_catalog, PRESENTATION_NAMES};
use milnor::fox::{parse_presentation, GroupPresentation};
use milnor::lie::{decomposability_report, rank_tables, MonodromyCertificate, RankContext, RankTables};
use milnor::multinet::{enumerate_multinets, triviality_report, MultinetOptions};
use milnor::nilp2::{chi2_arrangement, chi2_milnor, h2_second_nilpotent};
use milnor::os::resonance::resonance_components_deg1;
use milnor::os::{beta_p, OsField};
use milnor::torus::{assemble_cv1, CvOptions};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "milnorkit", version, about = "Invariants of hyperplane arrangements and their Milnor fibers")]
pub struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Where the arrangement comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    /// Catalog name, e.g. braid, b3, pencil(4), generic(5,2).
    #[arg(long, conflicts_with = "file")]
    pub name: Option<String>,
    /// Arrangement document (JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Intersection lattice statistics.
    Lattice(Input),
    /// Betti numbers of M and U.
    Betti(Input),
    /// Degree-one resonance components, and β_p over a prime field.
    Resonance {
        #[command(flatten)]
        input: Input,
        /// Q, or F<p> to also report β_p.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multinets and the combinatorial triviality verdict.
    Multinets {
        #[command(flatten)]
        input: Input,
        /// Also search proper sub-arrangements.
        #[arg(long)]
        sub: bool,
    },
    /// Components of V¹₁(M) and V¹₁(U).
    Cv {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Δ₁(t) and b₁ of the Milnor fiber.
    Milnor {
        #[command(flatten)]
        input: Input,
        /// Multiplicities, comma separated (default: from the document, else all 1).
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u64>>,
        #[arg(long, default_value = "depth")]
        method: String,
    },
    /// Integral H₁ of a cyclic cover with its deck action.
    H1cover {
        #[command(flatten)]
        input: Input,
        /// Presentation document, or a catalog presentation name such as braid_U.
        #[arg(long)]
        presentation: Option<String>,
        /// Character values on the generators (requires --order).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        chi: Option<Vec<i64>>,
        #[arg(long)]
        order: Option<usize>,
        /// Multiplicities defining the Milnor fiber cover.
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u64>>,
    },
    /// Lower central series ranks φ_k.
    Lcs(RankArgs),
    /// Chen ranks θ_k.
    Chen(RankArgs),
    /// Schur multiplier of the second nilpotent quotient.
    Nilp2 {
        #[command(flatten)]
        input: Input,
        /// Use π₁ of the Milnor fiber instead of π₁(U).
        #[arg(long)]
        fiber: bool,
        /// Index of the hyperplane used to decone.
        #[arg(long, default_value_t = 0)]
        drop: usize,
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u64>>,
        /// Presentation document or catalog name supplying the monodromy certificate.
        #[arg(long)]
        presentation: Option<String>,
    },
    /// 𝔽₂-Betti numbers of the double cover classified by α.
    Doublecover {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        alpha: Vec<i64>,
        /// Use the complement M instead of its projectivization U.
        #[arg(long)]
        affine: bool,
    },
    /// Catalog listings.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// The standard battery for one arrangement, or for every default catalog instance.
    Report {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 8)]
    pub kmax: u64,
    /// Transfer the table to the Milnor fiber (needs a triviality certificate).
    #[arg(long)]
    pub fiber: bool,
}

/// A loaded arrangement with its catalog name, if any.
struct Loaded {
    name: Option<String>,
    arrangement: Arrangement,
    input: Value,
}

impl Loaded {
    fn lattice(&self) -> IntersectionLattice {
        IntersectionLattice::full(&self.arrangement)
    }

    fn cv_certified(&self) -> bool {
        self.name.as_deref().and_then(|n| catalog(n).ok()).is_some_and(|e| e.cv_certified)
    }
}

fn load(input: &Input) -> Result<Loaded> {
    match (&input.name, &input.file) {
        (Some(name), None) => {
            let e = catalog(name)?;
            Ok(Loaded { name: Some(name.clone()), arrangement: e.arrangement, input: json!({"name": name}) })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| MilnorError::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            let a = parse_arrangement_str(&text)?;
            let input = json!({"file": path.display().to_string(), "arrangement": a.to_json()});
            Ok(Loaded { name: None, arrangement: a, input })
        }
        _ => Err(MilnorError::InvalidInput("give exactly one of --name or --file".into())),
    }
}

fn load_presentation(source: &str) -> Result<GroupPresentation> {
    let path = std::path::Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| MilnorError::InvalidInput(format!("cannot read {source}: {e}")))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| MilnorError::Malformed(e.to_string()))?;
        parse_presentation(&v)
    } else {
        presentation_catalog(source)
    }
}

fn multiplicities(l: &Loaded, m: &Option<Vec<u64>>) -> Vec<u64> {
    m.clone().unwrap_or_else(|| l.arrangement.multiplicities_or_ones())
}

fn lattice_json(a: &Arrangement, l: &IntersectionLattice) -> Value {
    let counts: Vec<usize> = l.flats.iter().map(Vec::len).collect();
    json!({"n": a.n(), "rank": l.rank, "L2": l2_histogram_json(l), "flats_per_rank": counts})
}

fn betti_json(l: &IntersectionLattice) -> Value {
    let b = betti_numbers(l);
    json!({"M": b.m, "U": b.u, "euler_U": b.euler_u()})
}

fn certificate_for(loaded: &Loaded, l: &IntersectionLattice) -> Result<Option<MonodromyCertificate>> {
    let d = decomposability_report(l)?;
    if let Some(c) = MonodromyCertificate::from_decomposability(&d) {
        return Ok(Some(c));
    }
    let t = triviality_report(&loaded.arrangement, l, loaded.cv_certified())?;
    Ok(MonodromyCertificate::from_triviality(&t))
}

fn rank_context(loaded: &Loaded, l: &IntersectionLattice) -> Result<RankContext> {
    match &loaded.name {
        Some(n) => RankContext::for_catalog(n, l),
        None => RankContext::from_arrangement(&loaded.arrangement, l),
    }
}

fn rank_column(t: &RankTables, fiber: bool, phi: bool) -> Value {
    let table = if fiber { t.fiber.as_ref() } else { Some(&t.complement) };
    let mut obj = serde_json::Map::new();
    for (k, e) in table.map(|x| x.rows.iter()).into_iter().flatten() {
        let cell = if phi { &e.phi } else { &e.theta };
        let v = match cell {
            Some((v, p)) => json!({"value": v.to_u64().map_or_else(|| json!(v.to_string()), |u| json!(u)),
                                    "provenance": p.as_str()}),
            None => json!({"value": null, "provenance": "unknown"}),
        };
        obj.insert(k.to_string(), v);
    }
    Value::Object(obj)
}

fn ranks(args: &RankArgs, phi: bool, command: &str) -> Result<Report> {
    let loaded = load(&args.input)?;
    let l = loaded.lattice();
    let ctx = rank_context(&loaded, &l)?;
    let cert = if args.fiber {
        Some(certificate_for(&loaded, &l)?.ok_or_else(|| {
            MilnorError::MissingCertificate("no triviality certificate for the degree-one monodromy".into())
        })?)
    } else {
        None
    };
    let t = rank_tables(&l, &ctx, args.kmax, cert)?;
    let key = if phi { "phi" } else { "theta" };
    let mut results = json!({key: rank_column(&t, args.fiber, phi), "group": if args.fiber { "F" } else { "U" }});
    if let Some(c) = &t.certificate {
        results["certificate"] = json!(c.as_str());
    }
    if phi {
        results["decomposability"] = decomposability_report(&l)?.to_json();
    }
    Ok(Report::new(command, loaded.input, json!({"kmax": args.kmax, "fiber": args.fiber}), results))
}

/// A section of the battery: refusals (exit code 3) are recorded in place.
fn section(r: Result<Value>) -> Result<Value> {
    match r {
        Ok(v) => Ok(v),
        Err(e) if e.exit_code() == 3 => Ok(json!({"unavailable": e.to_string()})),
        Err(e) => Err(e),
    }
}

/// The default battery: lattice, Betti numbers, triviality, decomposability and Δ₁.
fn battery(loaded: &Loaded) -> Result<Value> {
    let l = loaded.lattice();
    let a = &loaded.arrangement;
    let m = a.multiplicities_or_ones();
    Ok(json!({
        "lattice": lattice_json(a, &l),
        "betti": betti_json(&l),
        "triviality": section(triviality_report(a, &l, loaded.cv_certified()).map(|t| t.to_json()))?,
        "decomposability": section(decomposability_report(&l).map(|d| d.to_json()))?,
        "milnor": section(delta1_and_betti(loaded.name.as_deref(), a, &m, DeltaMethod::Depth).map(|h| h.to_json()))?,
    }))
}

/// Run one command line, producing a report.
pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Lattice(input) => {
            let loaded = load(input)?;
            let l = loaded.lattice();
            let results = lattice_json(&loaded.arrangement, &l);
            Ok(Report::new("lattice", loaded.input, json!({}), results))
        }
        Command::Betti(input) => {
            let loaded = load(input)?;
            let results = betti_json(&loaded.lattice());
            Ok(Report::new("betti", loaded.input, json!({}), results))
        }
        Command::Resonance { input, field, seed } => {
            let loaded = load(input)?;
            let l = loaded.lattice();
            let comps = resonance_components_deg1(&loaded.arrangement, &l, *seed)?;
            let mut results = json!({"R1": comps.iter().map(|c| c.to_json()).collect::<Vec<_>>()});
            match OsField::parse(field)? {
                OsField::Fp(p) => results["beta"] = json!({p.to_string(): beta_p(&loaded.arrangement, p)?}),
                OsField::Q => {}
                OsField::Cyclo(_) => {
                    return Err(MilnorError::InvalidInput("resonance accepts Q or a prime field F<p>".into()))
                }
            }
            Ok(Report::new("resonance", loaded.input, json!({"field": field, "seed": seed}), results))
        }
        Command::Multinets { input, sub } => {
            let loaded = load(input)?;
            let l = loaded.lattice();
            let opts = MultinetOptions { sub_arrangements: *sub, ..Default::default() };
            let nets = enumerate_multinets(&loaded.arrangement, &l, opts)?;
            let results = json!({
                "multinets": nets.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
                "triviality": triviality_report(&loaded.arrangement, &l, loaded.cv_certified())?.to_json(),
            });
            Ok(Report::new("multinets", loaded.input, json!({"sub": sub}), results))
        }
        Command::Cv { input, seed } => {
            let loaded = load(input)?;
            let l = loaded.lattice();
            let mut opts = match &loaded.name {
                Some(n) => CvOptions::for_catalog(n)?,
                None => CvOptions::default(),
            };
            opts.seed = *seed;
            let cv = assemble_cv1(&loaded.arrangement, &l, &opts)?;
            Ok(Report::new("cv", loaded.input, json!({"seed": seed}), cv.to_json()))
        }
        Command::Milnor { input, m, method } => {
            let loaded = load(input)?;
            let m = multiplicities(&loaded, m);
            let method = DeltaMethod::parse(method)?;
            let h = delta1_and_betti(loaded.name.as_deref(), &loaded.arrangement, &m, method)?;
            Ok(Report::new("milnor", loaded.input, json!({"m": m, "method": method.as_str()}), h.to_json()))
        }
        Command::H1cover { input, presentation, chi, order, m } => {
            let (input_json, action, params) = match (presentation, chi) {
                (Some(source), Some(chi)) => {
                    let p = load_presentation(source)?;
                    let n = order.ok_or_else(|| MilnorError::InvalidInput("--chi needs --order".into()))?;
                    (json!({"presentation": p.to_json()}), monodromy_action_h1(&p, chi, n)?, json!({"chi": chi, "order": n}))
                }
                (Some(source), None) => {
                    let p = load_presentation(source)?;
                    let n = p.meridians.as_ref().and_then(|x| x.first()).map_or(0, Vec::len);
                    let m = m.clone().unwrap_or_else(|| vec![1; n]);
                    (json!({"presentation": p.to_json()}), milnor_fiber_h1_from(&p, &m)?, json!({"m": m}))
                }
                (None, None) => {
                    let loaded = load(input)?;
                    let name = loaded.name.clone().ok_or_else(|| {
                        MilnorError::MissingCertificate("a file arrangement needs --presentation".into())
                    })?;
                    let m = multiplicities(&loaded, m);
                    (loaded.input, milnor_fiber_h1(&name, &m)?, json!({"m": m}))
                }
                (None, Some(_)) => return Err(MilnorError::InvalidInput("--chi needs --presentation".into())),
            };
            Ok(Report::new("h1cover", input_json, params, action.to_json()))
        }
        Command::Lcs(args) => ranks(args, true, "lcs"),
        Command::Chen(args) => ranks(args, false, "chen"),
        Command::Nilp2 { input, fiber, drop, m, presentation } => {
            let loaded = load(input)?;
            let l = loaded.lattice();
            let mvec = multiplicities(&loaded, m);
            let chi = if *fiber {
                let action = match (presentation, &loaded.name) {
                    (Some(source), _) => milnor_fiber_h1_from(&load_presentation(source)?, &mvec)?,
                    (None, Some(name)) => milnor_fiber_h1(name, &mvec)?,
                    (None, None) => {
                        return Err(MilnorError::MissingCertificate("the fiber needs a presentation".into()))
                    }
                };
                chi2_milnor(&l, &mvec, *drop, &action)?
            } else {
                chi2_arrangement(&l, *drop)?
            };
            let outcome = h2_second_nilpotent(&chi)?;
            let mut results = outcome.to_json();
            results["chi2"] = chi.to_json();
            let params = json!({"fiber": fiber, "drop": drop, "m": if *fiber { json!(mvec) } else { Value::Null }});
            Ok(Report::new("nilp2", loaded.input, params, results))
        }
        Command::Doublecover { input, alpha, affine } => {
            let loaded = load(input)?;
            let model = OsModel::new(&loaded.arrangement, !affine)?;
            let d = double_cover_os(&model, alpha)?;
            Ok(Report::new("doublecover", loaded.input, json!({"alpha": alpha, "affine": affine}), d.to_json()))
        }
        Command::Catalog { action: CatalogAction::List } => Ok(Report::new(
            "catalog list",
            Value::Null,
            json!({}),
            json!({"arrangements": CATALOG_NAMES, "presentations": PRESENTATION_NAMES, "defaults": default_instances()}),
        )),
        Command::Report { input, all } => {
            if *all {
                let mut results = serde_json::Map::new();
                for name in default_instances() {
                    let loaded = load(&Input { name: Some(name.to_string()), file: None })?;
                    results.insert(name.to_string(), battery(&loaded)?);
                }
                Ok(Report::new("report", json!({"all": default_instances()}), json!({}), Value::Object(results)))
            } else {
                let loaded = load(input)?;
                let results = battery(&loaded)?;
                Ok(Report::new("report", loaded.input, json!({}), results))
            }
        }
    }
}
