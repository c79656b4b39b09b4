mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use contour_core::exact::pluecker_relations_ok;
use contour_core::grassmann::{contains_e, gm_point, gm_translate, is_general_position};
use contour_core::homology::cohomology_report;
use contour_core::matroid::{is_connected, matroid_from_matrix, polytope_of, Matroid};
use contour_core::polytope::hypersimplex;
use contour_core::presets::random_point_off;
use contour_core::residue::residue_report;
use contour_core::stanley::{hilbert_check, white_failures, GluingData, GluingJson};
use contour_core::subdivision::{
    is_matroid_decomposition, regular_subdivision, strata_poset, validate, Subdivision,
    SubdivisionJson,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use report::RunReport;

const DEFAULT_SEED: u64 = 20_260_101;

#[derive(Parser)]
#[command(
    name = "contour",
    version,
    about = "Exact checks on hyperplane arrangements and hypersimplex subdivisions"
)]
struct Cli {
    /// Seed for every randomized check; recorded in the report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genericity, matroid and Gel'fand–MacPherson data of an arrangement.
    Analyze(Source),
    /// Regular subdivision of Δ(r, n) from heights keyed by "i1,...,ir".
    Subdivide {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Span, volume and common-face checks of a subdivision.
    Validate(Source),
    /// Cohomology dimensions of O_S, O_B and the dualizing sheaf.
    Cohomology(Source),
    /// Multigraded Hilbert function of the stable toric algebra.
    Hilbert {
        #[command(flatten)]
        source: Source,
        /// Gluing data JSON; random cocycle data from the seed if omitted.
        #[arg(long)]
        gluing: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        dmax: i64,
        /// Random weights outside the cone to test.
        #[arg(long, default_value_t = 50)]
        outside: usize,
    },
    /// Saturation of the semigroup of a matroid polytope up to level d.
    White {
        /// Matroid JSON; the uniform matroid U(r, n) with --r/--n if omitted.
        file: Option<PathBuf>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        dmax: i64,
    },
    /// Residue matrix of a generic arrangement.
    Residues(Source),
    /// Poset of strata of the boundary of a subdivision.
    Strata {
        #[command(flatten)]
        source: Source,
        /// Emit Graphviz DOT instead of a report.
        #[arg(long)]
        dot: bool,
    },
    /// Runs a short pipeline over the built-in presets.
    Demo {
        #[arg(long, default_value_t = 2)]
        dmax: i64,
    },
}

#[derive(clap::Args)]
struct Source {
    /// Input JSON file; `-` or nothing reads stdin.
    file: Option<PathBuf>,
    /// generic-2-4, generic-3-6, nine-lines-3-9, split-2-4 or trivial-R-N.
    #[arg(long)]
    preset: Option<String>,
}

impl Source {
    fn path(&self) -> Option<&Path> {
        self.file.as_deref()
    }

    fn preset(&self) -> Option<&str> {
        self.preset.as_deref()
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn timed<T>(report: &mut RunReport, key: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    report.time(key, start.elapsed().as_secs_f64() * 1e3);
    out
}

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter()
        .map(|s| s.iter().map(|i| i + 1).collect())
        .collect()
}

fn analyze(src: &Source, seed: u64) -> Result<RunReport> {
    let a = input::arrangement(src.path(), src.preset())?;
    let mut rep = RunReport::new("analyze", seed, &[to_value(&a)?]);
    let generic = is_general_position(&a);
    let m = matroid_from_matrix(&a.forms().transpose())?;
    let p = gm_point(&a)?;
    rep.insert("r", a.r())?;
    rep.insert("n", a.n())?;
    rep.insert("general_position", generic)?;
    rep.insert("dependent_subsets", one_based(&a.dependent_subsets()))?;
    rep.insert("uniform", m == Matroid::uniform(a.r(), a.n())?)?;
    rep.insert("connected", is_connected(&m))?;
    rep.insert("polytope_dim", polytope_of(&m).dim())?;
    rep.insert("matroid", &m)?;
    rep.insert("gm_point", p.coords())?;
    rep.check(
        "gm_point satisfies the Plücker relations",
        pluecker_relations_ok(&p),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = true;
    for _ in 0..10 {
        let u = random_point_off(&a, &mut rng);
        all &= contains_e(&gm_translate(&a, &u)?);
    }
    rep.check("translates contain e at 10 random points", all);
    Ok(rep)
}

fn subdivide(src: &Source, r: Option<usize>, n: Option<usize>, seed: u64) -> Result<RunReport> {
    let (r, n, h) = input::heights(src.path(), src.preset(), r, n)?;
    let mut rep = RunReport::new("subdivide", seed, &[to_value(h.to_keyed(r, n))?]);
    let s = timed(&mut rep, "subdivide", || {
        regular_subdivision(&hypersimplex(r, n)?, &h)
    })?;
    let v = timed(&mut rep, "validate", || validate(&s));
    rep.insert("subdivision", SubdivisionJson::from_subdivision(&s)?)?;
    rep.insert("cells", s.cells().len())?;
    rep.insert("matroidal", is_matroid_decomposition(&s)?)?;
    rep.check("subdivision is valid", v.passed());
    rep.insert("validation", v)?;
    Ok(rep)
}

fn subdivision_input(src: &Source) -> Result<(Subdivision, Value)> {
    let s = input::subdivision(src.path(), src.preset())?;
    let v = to_value(SubdivisionJson::from_subdivision(&s)?)?;
    Ok((s, v))
}

fn validate_cmd(src: &Source, seed: u64) -> Result<RunReport> {
    let (s, v) = subdivision_input(src)?;
    let mut rep = RunReport::new("validate", seed, &[v]);
    let report = timed(&mut rep, "validate", || validate(&s));
    rep.check("span", report.span_ok);
    rep.check("volume", report.volume_ok);
    rep.check("common faces", report.common_face_ok);
    rep.insert("validation", report)?;
    Ok(rep)
}

fn cohomology(src: &Source, seed: u64) -> Result<RunReport> {
    let (s, v) = subdivision_input(src)?;
    let mut rep = RunReport::new("cohomology", seed, &[v]);
    let c = timed(&mut rep, "cohomology", || cohomology_report(&s))?;
    rep.check("h(O_S) = (1, 0, ..., 0)", c.h_os == c.expected_os);
    if let Some(e) = &c.expected_ob {
        rep.check("h(O_B) = (1, 0, ..., C(n-1, r-1))", *e == c.h_ob);
    }
    rep.check(
        "h(omega) = (C(n-1, r-1), 0, ..., 0)",
        c.h_omega == c.expected_omega,
    );
    rep.insert("cohomology", c)?;
    Ok(rep)
}

fn hilbert(
    src: &Source,
    gluing: Option<&Path>,
    dmax: i64,
    outside: usize,
    seed: u64,
) -> Result<RunReport> {
    let (s, v) = subdivision_input(src)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = match gluing {
        Some(p) => {
            let json: GluingJson = input::parse(Some(p))?;
            GluingData::from_json(&json, &s)?
        }
        None => GluingData::random_coboundary(&s, &mut rng)?,
    };
    let gv = to_value(t.to_json(&s)?)?;
    let mut rep = RunReport::new("hilbert", seed, &[v, gv.clone()]);
    let h = timed(&mut rep, "hilbert", || {
        hilbert_check(&s, &t, dmax, outside, &mut rng)
    })?;
    rep.check(
        format!("graded_dim = 1 on the cone up to level {dmax} and 0 at {outside} outside weights"),
        h.passed(),
    );
    rep.insert("gluing", gv)?;
    rep.insert("hilbert", h)?;
    Ok(rep)
}

fn white(
    file: Option<&Path>,
    r: Option<usize>,
    n: Option<usize>,
    dmax: i64,
    seed: u64,
) -> Result<RunReport> {
    let m: Matroid = match (file, r, n) {
        (None, Some(r), Some(n)) => Matroid::uniform(r, n)?,
        _ => input::parse(file)?,
    };
    let mut rep = RunReport::new("white", seed, &[to_value(&m)?]);
    let bases: Vec<Vec<usize>> = m.bases().iter().cloned().collect();
    let mut failures = Vec::new();
    for d in 1..=dmax {
        for p in white_failures(m.n(), m.r(), &bases, d)? {
            failures.push((d, p));
        }
    }
    rep.check(format!("saturated up to level {dmax}"), failures.is_empty());
    rep.insert("failures", failures)?;
    Ok(rep)
}

fn residues(src: &Source, seed: u64) -> Result<RunReport> {
    let a = input::arrangement(src.path(), src.preset())?;
    let mut rep = RunReport::new("residues", seed, &[to_value(&a)?]);
    let r = timed(&mut rep, "residues", || residue_report(&a))?;
    rep.check(
        "residue matrix equals the inclusion matrix",
        r.matches_inclusion,
    );
    rep.check(
        "symbolic and determinant residues agree",
        r.determinant_agrees,
    );
    rep.check("full row rank", r.full_row_rank);
    rep.insert("residues", r)?;
    Ok(rep)
}

fn strata(src: &Source, seed: u64) -> Result<(RunReport, String)> {
    let (s, v) = subdivision_input(src)?;
    let mut rep = RunReport::new("strata", seed, &[v]);
    let (r, _) = s.params()?;
    let poset = timed(&mut rep, "strata", || strata_poset(&s))?;
    let top = poset.elements.iter().map(|e| e.stratum_dim).max();
    rep.check(
        format!("top stratum has dimension {}", r - 1),
        top == Some(r - 1),
    );
    rep.insert("counts_by_dim", poset.counts_by_dim())?;
    let dot = poset.to_dot();
    rep.insert("poset", poset)?;
    Ok((rep, dot))
}

fn demo(dmax: i64, seed: u64) -> Result<RunReport> {
    let preset = |p: &str| Source {
        file: None,
        preset: Some(p.to_string()),
    };
    let parts = vec![
        analyze(&preset("generic-2-4"), seed)?,
        analyze(&preset("nine-lines-3-9"), seed)?,
        residues(&preset("generic-3-6"), seed)?,
        validate_cmd(&preset("split-2-4"), seed)?,
        cohomology(&preset("split-2-4"), seed)?,
        cohomology(&preset("trivial-3-6"), seed)?,
        hilbert(&preset("split-2-4"), None, dmax, 20, seed)?,
        white(None, Some(2), Some(4), dmax, seed)?,
        strata(&preset("trivial-2-4"), seed)?.0,
    ];
    let digests: Vec<Value> = parts
        .iter()
        .map(|p| Value::from(p.inputs_digest.clone()))
        .collect();
    let mut rep = RunReport::new("demo", seed, &digests);
    for p in &parts {
        rep.check(
            format!("{} [{}]", p.command, &p.inputs_digest[7..19]),
            p.passed,
        );
        for (k, ms) in &p.timings_ms {
            let key = format!("{}.{k}", p.command);
            let prev = rep.timings_ms.get(&key).copied().unwrap_or(0.0);
            rep.time(&key, prev + ms);
        }
    }
    let summary: Vec<Value> = parts
        .into_iter()
        .map(|mut p| {
            p.timings_ms.clear();
            serde_json::to_value(p)
        })
        .collect::<std::result::Result<_, _>>()?;
    rep.insert("runs", summary)?;
    Ok(rep)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let seed = cli.seed;
    let rep = match &cli.command {
        Command::Analyze(src) => analyze(src, seed)?,
        Command::Subdivide { source, r, n } => subdivide(source, *r, *n, seed)?,
        Command::Validate(src) => validate_cmd(src, seed)?,
        Command::Cohomology(src) => cohomology(src, seed)?,
        Command::Hilbert {
            source,
            gluing,
            dmax,
            outside,
        } => hilbert(source, gluing.as_deref(), *dmax, *outside, seed)?,
        Command::White { file, r, n, dmax } => white(file.as_deref(), *r, *n, *dmax, seed)?,
        Command::Residues(src) => residues(src, seed)?,
        Command::Strata { source, dot } => {
            let (rep, graph) = strata(source, seed)?;
            if *dot {
                emit(&graph, cli.output.as_deref())?;
                return Ok(rep.passed);
            }
            rep
        }
        Command::Demo { dmax } => demo(*dmax, seed)?,
    };
    let text = if cli.pretty {
        rep.to_pretty_text()
    } else {
        serde_json::to_string_pretty(&rep)? + "\n"
    };
    emit(&text, cli.output.as_deref())?;
    Ok(rep.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
