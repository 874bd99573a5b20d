//! Command-line front end. [`run`] takes the arguments (without the program
//! name) and returns the exit code.
//!
//! Exit codes: 0 success or isomorphic, 1 non-isomorphic or an oracle
//! disagreement, 2 usage or domain error, 3 unreadable or malformed input,
//! 4 capacity exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::generators;
use crate::graph::{ColoredGraph, OrderedPartition, Permutation};
use crate::group::PermutationGroup;
use crate::io::{parse_graph, write_graph};
use crate::search::{
    are_isomorphic_with, automorphism_group_with, brute_force_canonical, canonical_form_with, SearchOptions,
    SearchStats,
};

#[derive(Parser, Debug)]
#[command(name = "irsearch", version, about = "Canonical forms, automorphism groups and isomorphism of colored graphs")]
struct Cli {
    /// Print the run report as one JSON object per graph.
    #[arg(long, global = true)]
    stats_json: bool,
    /// Disable orbit, attempt and matched-node pruning.
    #[arg(long, global = true)]
    no_prune: bool,
    /// Disable aborting children on a larger refinement trace.
    #[arg(long, global = true)]
    no_trace_shortcut: bool,
    /// Seed for `gen random` and for shuffling generated graphs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cross-check against brute force when the graph has at most 9 vertices.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical labeling and canonical-form hash.
    Canon { file: PathBuf },
    /// Automorphism group generators, order and orbits.
    Aut { file: PathBuf },
    /// Isomorphism test; exits 1 when the graphs are not isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Generate a graph: complete N | cycle N | grid D N | torus D N |
    /// lattice N | paley Q | cfi BASE-FILE [twisted] | random N [P].
    Gen {
        family: String,
        args: Vec<String>,
        /// Output file instead of standard output.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Report table for every graph file in a directory.
    Bench { dir: PathBuf },
}

/// Machine-readable run report.
#[derive(Serialize, Debug, Clone)]
struct Report {
    name: String,
    n: usize,
    m: usize,
    aut_order: String,
    orbits: usize,
    time_s: f64,
    mref_calls: u64,
    depth: usize,
    generators: usize,
    group_time_s: f64,
    residuals: usize,
}

impl Report {
    fn new(name: &str, g: &ColoredGraph, group: &PermutationGroup, stats: &SearchStats, time_s: f64) -> Self {
        Report {
            name: name.to_string(),
            n: g.n(),
            m: g.m(),
            aut_order: group.order().to_string(),
            orbits: orbit_count(group),
            time_s,
            mref_calls: stats.multirefine_calls,
            depth: stats.max_depth,
            generators: stats.generators_found,
            group_time_s: stats.group_time,
            residuals: stats.residual_count,
        }
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "graph: {} (V={}, E={})", self.name, self.n, self.m)?;
        writeln!(out, "|Aut|: {}", self.aut_order)?;
        writeln!(out, "orbits: {}", self.orbits)?;
        writeln!(out, "time: {:.3} s", self.time_s)?;
        writeln!(out, "mref calls: {} (depth {})", self.mref_calls, self.depth)?;
        writeln!(out, "generators: {}", self.generators)?;
        writeln!(out, "group time: {:.3} s", self.group_time_s)?;
        writeln!(out, "residuals: {}", self.residuals)
    }

    fn write(&self, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
        if json {
            writeln!(out, "{}", serde_json::to_string(self).expect("report serializes"))
        } else {
            self.write_text(out)
        }
    }
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Capacity(String),
    Oracle(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Capacity(_) => 4,
            Failure::Oracle(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Capacity(m) | Failure::Oracle(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            Error::Capacity(_) => Failure::Capacity(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<ColoredGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::Input(format!("{}: {e}", path.display())),
        other => Failure::from(other),
    })
}

fn orbit_count(group: &PermutationGroup) -> usize {
    let points: Vec<u32> = (1..=group.degree() as u32).collect();
    group.orbits(&points).len()
}

fn name_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn images(p: &Permutation) -> String {
    p.images().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// Runs the command line and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("irsearch".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn options(cli: &Cli) -> SearchOptions {
    SearchOptions { prune: !cli.no_prune, trace_shortcut: !cli.no_trace_shortcut }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let opts = options(cli);
    match &cli.command {
        Command::Canon { file } => {
            let g = read_graph(file)?;
            let t = Instant::now();
            let c = canonical_form_with(&g, opts);
            let report = Report::new(&name_of(file), &g, &c.group, &c.stats, t.elapsed().as_secs_f64());
            writeln!(out, "labeling: {}", images(&c.labeling))?;
            writeln!(out, "hash: {}", c.hash())?;
            report.write(cli.stats_json, out)?;
            if cli.oracle {
                check_oracle(&g, &c.group.order(), out)?;
            }
            Ok(0)
        }
        Command::Aut { file } => {
            let g = read_graph(file)?;
            let t = Instant::now();
            let a = automorphism_group_with(&g, opts);
            let report = Report::new(&name_of(file), &g, &a.group, &a.stats, t.elapsed().as_secs_f64());
            for p in a.group.generators() {
                writeln!(out, "generator: {p}")?;
            }
            writeln!(out, "order: {}", a.group.order())?;
            writeln!(out, "orbits: {}", orbit_count(&a.group))?;
            writeln!(out, "residuals: {}", a.residuals.len())?;
            report.write(cli.stats_json, out)?;
            if cli.oracle {
                check_oracle(&g, &a.group.order(), out)?;
            }
            Ok(0)
        }
        Command::Iso { first, second } => {
            let g1 = read_graph(first)?;
            let g2 = read_graph(second)?;
            let witness = are_isomorphic_with(&g1, &g2, opts);
            if cli.oracle && g1.n() <= 9 && g2.n() <= 9 {
                let same = g1.coloring().cell_sizes() == g2.coloring().cell_sizes()
                    && brute_force_canonical(&g1)?.0 == brute_force_canonical(&g2)?.0;
                if same != witness.is_some() {
                    return Err(Failure::Oracle("brute force disagrees with the isomorphism test".into()));
                }
                writeln!(out, "oracle: agrees")?;
            }
            match witness {
                Some(p) => {
                    writeln!(out, "isomorphic")?;
                    writeln!(out, "witness: {}", images(&p))?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "non-isomorphic")?;
                    Ok(1)
                }
            }
        }
        Command::Gen { family, args, output } => {
            let g = generate(family, args, cli.seed)?;
            let text = write_graph(&g);
            match output {
                Some(path) => fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::Bench { dir } => bench(dir, opts, cli.stats_json, out),
    }
}

fn check_oracle(g: &ColoredGraph, order: &BigUint, out: &mut dyn Write) -> Result<(), Failure> {
    if g.n() > 9 {
        writeln!(out, "oracle: skipped (more than 9 vertices)")?;
        return Ok(());
    }
    let (_, expected) = brute_force_canonical(g)?;
    if &expected != order {
        return Err(Failure::Oracle(format!("brute force counts {expected} automorphisms, search found {order}")));
    }
    writeln!(out, "oracle: agrees")?;
    Ok(())
}

fn number(args: &[String], k: usize, what: &str) -> Result<usize, Failure> {
    let tok = args.get(k).ok_or_else(|| Failure::Usage(format!("missing {what}")))?;
    tok.parse().map_err(|_| Failure::Usage(format!("invalid {what} `{tok}`")))
}

fn expect_args(family: &str, args: &[String], min: usize, max: usize) -> Result<(), Failure> {
    if args.len() < min || args.len() > max {
        return Err(Failure::Usage(format!("wrong number of arguments for `{family}`")));
    }
    Ok(())
}

/// Builds a generated graph; with a seed, the vertex labels are shuffled.
fn generate(family: &str, args: &[String], seed: Option<u64>) -> Result<ColoredGraph, Failure> {
    let g = match family {
        "complete" | "cycle" | "lattice" | "paley" => {
            expect_args(family, args, 1, 1)?;
            let n = number(args, 0, "size")?;
            match family {
                "complete" => generators::complete(n)?,
                "cycle" => generators::cycle(n)?,
                "lattice" => generators::lattice(n)?,
                _ => generators::paley(n)?,
            }
        }
        "grid" | "torus" => {
            expect_args(family, args, 2, 2)?;
            let d = number(args, 0, "dimension")?;
            let n = number(args, 1, "side")?;
            if family == "grid" {
                generators::grid(d, n)?
            } else {
                generators::torus(d, n)?
            }
        }
        "cfi" => {
            expect_args(family, args, 1, 2)?;
            let twisted = match args.get(1).map(String::as_str) {
                None => false,
                Some("twisted") => true,
                Some(other) => return Err(Failure::Usage(format!("expected `twisted`, got `{other}`"))),
            };
            let base = read_graph(Path::new(&args[0]))?;
            generators::cfi(&base, twisted)?
        }
        "random" => {
            expect_args(family, args, 1, 2)?;
            let n = number(args, 0, "size")?;
            let p: f64 = match args.get(1) {
                None => 0.5,
                Some(t) => t.parse().map_err(|_| Failure::Usage(format!("invalid edge probability `{t}`")))?,
            };
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage(format!("edge probability {p} outside [0, 1]")));
            }
            let seed = seed.ok_or_else(|| Failure::Usage("`gen random` needs --seed".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            return Ok(ColoredGraph::new(n, &edges, OrderedPartition::unit(n))?);
        }
        other => return Err(Failure::Usage(format!("unknown family `{other}`"))),
    };
    match seed {
        None => Ok(g),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut img: Vec<u32> = (1..=g.n() as u32).collect();
            img.shuffle(&mut rng);
            let p = Permutation::from_images(&img)?;
            Ok(g.apply_permutation(&p)?)
        }
    }
}

fn bench(dir: &Path, opts: SearchOptions, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let rows: Vec<Result<Report, Failure>> = files
        .par_iter()
        .map(|path| {
            let g = read_graph(path)?;
            let t = Instant::now();
            let c = canonical_form_with(&g, opts);
            Ok(Report::new(&name_of(path), &g, &c.group, &c.stats, t.elapsed().as_secs_f64()))
        })
        .collect();
    if !json {
        writeln!(
            out,
            "{:<24} {:>8} {:>9} {:>10} {:>14} {:>5} {:>24} {:>9} {:>4}",
            "graph", "V", "E", "time(s)", "mref (depth)", "gens", "|Aut|", "grp(s)", "rsd"
        )?;
    }
    for row in rows {
        let r = row?;
        if json {
            r.write(true, out)?;
        } else {
            writeln!(
                out,
                "{:<24} {:>8} {:>9} {:>10.3} {:>14} {:>5} {:>24} {:>9.3} {:>4}",
                r.name,
                r.n,
                r.m,
                r.time_s,
                format!("{} ({})", r.mref_calls, r.depth),
                r.generators,
                r.aut_order,
                r.group_time_s,
                r.residuals
            )?;
        }
    }
    Ok(0)
}
