//! The `indist` command line.
//!
//! Every command prints a first line `ok|fail|error <summary>` followed by an
//! optional payload. Exit codes: 0 ok, 1 fail or not found, 2 usage or
//! parse error, 3 infeasible, over budget or undecided.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use indist_core::cayley::{cayley_half_biased, search_cayley_threaded, verify_cayley_bias};
use indist_core::codes::{hamming_code, is_perfect_radius1, min_distance};
use indist_core::constructions::{
    base_h, biased_from_code, biased_m_over_n, h_k, half_biased_from_signature, parity_g, product, stable_extend,
    stable_from_biased, stable_parity, tensor_lift,
};
use indist_core::counting::{
    adjacency_kernel_dimension, count_partitions, count_solutions_leq, half_biased_lower_bound, null_space_dimension,
    KERNEL_MAX_DIM,
};
use indist_core::cube::{local_profile, locally_constant};
use indist_core::enumerate::{enumerate, Constraint, EnumerationMode};
use indist_core::format::{
    parse_cayley, parse_code, parse_cube, parse_lattice, write_cayley, write_code, write_cube, write_lattice,
};
use indist_core::iso::{are_isomorphic_with, IsoOptions, IsoVerdict};
use indist_core::lattice::{extend_to_lattice, lattice_bias_counts, verify_lattice_bias};
use indist_core::scenery::{
    bernoulli_product, chi_square_report, distributions_equal, exact_scenery_distribution, sample_scenery_counts,
    stability_pair_distribution, SceneryDistribution,
};
use indist_core::tree::{tree_greedy, verify_tree_bias};
use indist_core::walsh::walsh_transform;
use indist_core::{CubeFunction, ProfileKind, Rational};

/// Seed used by randomized commands when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub output: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: indist_core::Error,
    },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] indist_core::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(indist_core::Error::Infeasible(_)) => 3,
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }
}

type CliResult = Result<CommandResult, CliError>;

fn ok(summary: impl AsRef<str>, payload: impl AsRef<str>) -> CommandResult {
    finish(0, "ok", summary.as_ref(), payload.as_ref())
}

fn fail(summary: impl AsRef<str>, payload: impl AsRef<str>) -> CommandResult {
    finish(1, "fail", summary.as_ref(), payload.as_ref())
}

fn finish(exit_code: i32, tag: &str, summary: &str, payload: &str) -> CommandResult {
    let mut output = format!("{tag} {summary}\n");
    output.push_str(payload);
    if !output.ends_with('\n') {
        output.push('\n');
    }
    CommandResult { exit_code, output }
}

#[derive(Parser, Debug)]
#[command(name = "indist", version, about = "Locally biased and locally stable Boolean functions")]
struct Cli {
    /// Seed for randomized commands (default 20240601)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for enumeration and search
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a function (cube file) or a code (code file)
    Construct {
        #[command(subcommand)]
        builder: Builder,
        /// Write the artifact here instead of printing it
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check the local bias or stability of a function
    Verify(VerifyArgs),
    /// Walsh spectrum and Fourier weights by degree
    Spectrum {
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Decide whether two functions differ by a cube automorphism
    Isomorphic {
        #[arg(long = "fn-a")]
        a: PathBuf,
        #[arg(long = "fn-b")]
        b: PathBuf,
        #[arg(long, default_value_t = indist_core::iso::DEFAULT_EXACT_BOUND)]
        exact_bound: usize,
        #[arg(long, default_value_t = indist_core::iso::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// List every locally biased or stable function on a small cube
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational)]
        p: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Kind::Biased)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Mode::Backtrack)]
        mode: Mode,
    },
    /// Counting formulas
    Count {
        #[arg(long, value_enum)]
        what: CountWhat,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Scenery distributions of the simple random walk
    Scenery {
        #[command(subcommand)]
        command: SceneryCommand,
    },
    /// Periodic colorings of Z^n
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Periodic colorings of Cayley graphs of Z
    Cayley {
        #[command(subcommand)]
        command: CayleyCommand,
    },
    /// Labelings of the regular tree
    Tree {
        #[command(subcommand)]
        command: TreeCommand,
    },
}

#[derive(Subcommand, Debug)]
enum Builder {
    /// Hamming code H_k (code file)
    Hamming {
        #[arg(long)]
        k: u32,
    },
    /// Function from the Hamming code H_k, locally 1/2^k-biased
    Code {
        #[arg(long)]
        k: u32,
    },
    /// Locally m/2^k-biased function on 2^k coordinates
    #[command(name = "m_over_n")]
    MOverN {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u64,
    },
    /// g_n = x1 ... x_{n/2}
    G {
        #[arg(long)]
        n: usize,
    },
    /// The 4-variable function h
    H,
    /// h composed with products of k blocks
    #[command(name = "h_k")]
    HK {
        #[arg(long)]
        k: usize,
    },
    /// Product of h_i over a signature, completed by g
    Signature {
        #[arg(long)]
        n: usize,
        /// Comma separated block sizes, e.g. 1,1,2 (empty for none)
        #[arg(long, default_value = "")]
        sig: String,
    },
    /// Replace each coordinate by a product of c fresh ones
    #[command(name = "tensor_lift")]
    TensorLift {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        c: usize,
    },
    /// Product of two locally 1/2-biased functions on disjoint blocks
    Product {
        #[arg(long = "fn-a")]
        a: PathBuf,
        #[arg(long = "fn-b")]
        b: PathBuf,
    },
    /// Parity on the last n-m coordinates, locally m/n-stable
    #[command(name = "stable_parity")]
    StableParity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// f(x) * x_{n+1} for a locally 1/2-biased f
    #[command(name = "stable_from_biased")]
    StableFromBiased {
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Add ignored coordinates to a locally stable function
    #[command(name = "stable_extend")]
    StableExtend {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Constant function
    Constant {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_sign, default_value = "+")]
        sign: i8,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "fn", required_unless_present = "code", conflicts_with = "code")]
    function: Option<PathBuf>,
    /// Check a code file for distance and perfection instead
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Kind::Biased)]
    kind: Kind,
}

#[derive(Subcommand, Debug)]
enum SceneryCommand {
    /// Exact law of the scenery word over L steps (L+1 signs)
    Exact {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        len: usize,
        /// Law of the products f(S_i) f(S_{i+1}) instead (L signs)
        #[arg(long)]
        pairs: bool,
    },
    /// Sampled word counts with a chi-square statistic
    Sample {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        len: usize,
        #[arg(long = "n-samples")]
        samples: u64,
    },
    /// Exact comparison of two scenery laws; exit 0 iff equal
    Compare {
        #[arg(long = "fn-a")]
        a: PathBuf,
        #[arg(long = "fn-b")]
        b: PathBuf,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        pairs: bool,
    },
    /// Product law of independent signs with P(+1) = p
    Bernoulli {
        #[arg(long, value_parser = parse_rational)]
        p: Rational,
        /// Number of signs
        #[arg(long)]
        len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// f(x mod 2) on Z^n, as a lattice file
    Extend {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check local bias over all residue classes
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CayleyCommand {
    /// Classes of periodic locally p-biased patterns up to a period bound
    Search {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long, value_parser = parse_rational)]
        p: Rational,
        #[arg(long, default_value_t = 20)]
        pmax: usize,
    },
    /// Check local bias of a cayleyz file
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// The half-biased pattern of period 2(a+b) for generators {a, b}
    Construct {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum TreeCommand {
    /// Greedy labeling; randomized when --seed is given
    Greedy {
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Biased,
    Stable,
}

impl From<Kind> for ProfileKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Biased => ProfileKind::Bias,
            Kind::Stable => ProfileKind::Stability,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Oracle,
    Backtrack,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CountWhat {
    Solutions,
    Partitions,
    Bound,
    Kernel,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let p: Rational = s.trim().parse().map_err(|_| format!("`{s}` is not a fraction b/d"))?;
    if p > Rational::from_integer(1) {
        return Err(format!("{p} is larger than 1"));
    }
    Ok(p)
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(format!("`{s}` is not + or -")),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load<T>(path: &Path, parse: fn(&str) -> indist_core::Result<T>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

fn load_cube(path: &Path) -> Result<CubeFunction, CliError> {
    load(path, parse_cube)
}

/// Writes `text` to `out`, or returns it as the payload.
fn emit(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: 0,
                    output: e.to_string(),
                },
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                    finish(2, "error", &format!("usage: {first}"), &text)
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(result) => result,
        Err(e) => finish(e.exit_code(), "error", &e.to_string(), ""),
    }
}

fn dispatch(cli: &Cli) -> CliResult {
    let threads = cli.threads.max(1);
    match &cli.command {
        Command::Construct { builder, out } => construct(builder, out.as_deref()),
        Command::Verify(args) => verify(args),
        Command::Spectrum { function } => spectrum(function),
        Command::Isomorphic {
            a,
            b,
            exact_bound,
            budget,
        } => isomorphic(a, b, *exact_bound, *budget),
        Command::Enumerate { n, p, kind, mode } => enumerate_cmd(*n, *p, *kind, *mode, threads),
        Command::Count { what, k, n } => count(*what, *k, *n),
        Command::Scenery { command } => scenery(command, cli.seed.unwrap_or(DEFAULT_SEED)),
        Command::Lattice { command } => lattice(command),
        Command::Cayley { command } => cayley(command, threads),
        Command::Tree { command } => tree(command, cli.seed),
    }
}

fn construct(builder: &Builder, out: Option<&Path>) -> CliResult {
    let (name, f) = match builder {
        Builder::Hamming { k } => {
            let code = hamming_code(*k)?;
            let summary = format!("constructed hamming k={k} n={} words={}", code.n(), code.len());
            return Ok(ok(summary, emit(write_code(&code), out)?));
        }
        Builder::Code { k } => (format!("code k={k}"), biased_from_code(&hamming_code(*k)?)?),
        Builder::MOverN { k, m } => (format!("m_over_n k={k} m={m}"), biased_m_over_n(*k, *m)?),
        Builder::G { n } => ("g".to_string(), parity_g(*n)?),
        Builder::H => ("h".to_string(), base_h()),
        Builder::HK { k } => (format!("h_k k={k}"), h_k(*k)?),
        Builder::Signature { n, sig } => {
            let parts = sig
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad signature entry `{s}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            (format!("signature sig={{{sig}}}"), half_biased_from_signature(*n, &parts)?)
        }
        Builder::TensorLift { function, c } => (format!("tensor_lift c={c}"), tensor_lift(&load_cube(function)?, *c)?),
        Builder::Product { a, b } => ("product".to_string(), product(&load_cube(a)?, &load_cube(b)?)?),
        Builder::StableParity { n, m } => (format!("stable_parity m={m}"), stable_parity(*n, *m)?),
        Builder::StableFromBiased { function } => {
            ("stable_from_biased".to_string(), stable_from_biased(&load_cube(function)?)?)
        }
        Builder::StableExtend { function, n } => {
            ("stable_extend".to_string(), stable_extend(&load_cube(function)?, *n)?)
        }
        Builder::Constant { n, sign } => (format!("constant sign={}", if *sign > 0 { "+" } else { "-" }), CubeFunction::constant(*n, *sign)?),
    };
    let summary = format!("constructed {name} n={}", f.n());
    Ok(ok(summary, emit(write_cube(&f), out)?))
}

fn verify(args: &VerifyArgs) -> CliResult {
    if let Some(path) = &args.code {
        let code = load(path, parse_code)?;
        let d = min_distance(&code)?;
        let perfect = is_perfect_radius1(&code);
        let summary = format!("code n={} words={} distance={d} perfect={perfect}", code.n(), code.len());
        return Ok(if perfect { ok(summary, "") } else { fail(summary, "") });
    }
    let path = args.function.as_ref().ok_or_else(|| CliError::Usage("--fn or --code required".into()))?;
    let f = load_cube(path)?;
    let kind = ProfileKind::from(args.kind);
    let profile = local_profile(&f, kind);
    let mut payload = String::new();
    for (count, vertices) in profile.histogram().iter().enumerate().filter(|(_, &v)| v > 0) {
        writeln!(payload, "count {count}: {vertices} vertices").unwrap();
    }
    Ok(match locally_constant(&f, kind) {
        Some(p) => ok(format!("{kind} p={p}"), payload),
        None => fail(format!("{kind} none: profile not constant"), payload),
    })
}

fn set_string(s: u64) -> String {
    let members: Vec<String> = (0..64).filter(|i| (s >> i) & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", members.join(","))
}

fn spectrum(path: &Path) -> CliResult {
    let f = load_cube(path)?;
    let spec = walsh_transform(&f);
    let mut payload = String::new();
    for s in spec.support() {
        writeln!(payload, "{} {}", set_string(s), spec.coeff(s)).unwrap();
    }
    for d in 0..=f.n() {
        let w = spec.degree_weight(d)?;
        if w != Rational::from_integer(0) {
            writeln!(payload, "weight degree={d} {w}").unwrap();
        }
    }
    Ok(ok(format!("spectrum n={} support={}", f.n(), spec.support_size()), payload))
}

fn isomorphic(a: &Path, b: &Path, exact_bound: usize, node_budget: u64) -> CliResult {
    let (f, g) = (load_cube(a)?, load_cube(b)?);
    let opts = IsoOptions {
        exact_bound,
        node_budget,
    };
    Ok(match are_isomorphic_with(&f, &g, opts)? {
        IsoVerdict::Isomorphic(w) => ok(format!("isomorphic {w}"), ""),
        IsoVerdict::NonIsomorphic(cert) => fail(format!("non-isomorphic {cert}"), ""),
        IsoVerdict::Unknown { nodes } => finish(3, "error", &format!("unknown: budget exhausted after {nodes} nodes"), ""),
    })
}

fn enumerate_cmd(n: usize, p: Option<Rational>, kind: Kind, mode: Mode, threads: usize) -> CliResult {
    let constraint = match kind {
        Kind::Biased => Constraint::biased(p),
        Kind::Stable => Constraint::stable(p),
    };
    let mode = match mode {
        Mode::Oracle => EnumerationMode::Oracle,
        Mode::Backtrack => EnumerationMode::Backtrack,
    };
    let report = enumerate(n, constraint, mode, threads)?;
    let mut payload = String::new();
    for c in &report.classes {
        writeln!(payload, "{} p={} size={}", c.representative.to_sign_string(), c.p, c.size).unwrap();
    }
    let summary = format!(
        "enumerate n={n} {constraint} functions={} classes={} nodes={}",
        report.total_functions,
        report.classes.len(),
        report.nodes_visited
    );
    Ok(if report.classes.is_empty() {
        fail(summary, payload)
    } else {
        ok(summary, payload)
    })
}

fn count(what: CountWhat, k: Option<usize>, n: Option<usize>) -> CliResult {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")));
    Ok(match what {
        CountWhat::Solutions => {
            let k = need(k, "k")?;
            ok(format!("count solutions k={k} value={}", count_solutions_leq(k)), "")
        }
        CountWhat::Partitions => {
            let k = need(k, "k")?;
            ok(format!("count partitions k={k} value={}", count_partitions(k)), "")
        }
        CountWhat::Bound => {
            let n = match (n, k) {
                (Some(n), _) => n,
                (None, Some(k)) => 4 * k,
                (None, None) => return Err(CliError::Usage("--n or --k is required".into())),
            };
            let b = half_biased_lower_bound(n)?;
            let summary = format!("count bound n={n} k={} exact={} binomial={}", b.k, b.exact, b.binomial_bound);
            if b.exact >= b.binomial_bound {
                ok(summary, "")
            } else {
                fail(summary, "")
            }
        }
        CountWhat::Kernel => {
            let n = need(n, "n")?;
            let formula = null_space_dimension(n)?;
            let mut summary = format!("count kernel n={n} value={formula}");
            if n <= KERNEL_MAX_DIM {
                let rank = adjacency_kernel_dimension(n)?;
                write!(summary, " rank_check={rank}").unwrap();
                if rank != formula {
                    return Ok(fail(summary, ""));
                }
            }
            ok(summary, "")
        }
    })
}

fn law(f: &CubeFunction, len: usize, pairs: bool) -> Result<SceneryDistribution, CliError> {
    Ok(if pairs {
        stability_pair_distribution(f, len)?
    } else {
        exact_scenery_distribution(f, len)?
    })
}

fn scenery(command: &SceneryCommand, seed: u64) -> CliResult {
    match command {
        SceneryCommand::Exact { function, len, pairs } => {
            let d = law(&load_cube(function)?, *len, *pairs)?;
            let what = if *pairs { "pairs" } else { "scenery" };
            Ok(ok(format!("{what} len={} words={}", d.word_len(), d.support_size()), d.to_string()))
        }
        SceneryCommand::Sample { function, len, samples } => {
            let f = load_cube(function)?;
            let counts = sample_scenery_counts(&f, *len, *samples, seed)?;
            let reference = exact_scenery_distribution(&f, *len)?;
            let report = chi_square_report(&counts, &reference)?;
            let mut payload = String::new();
            for (w, c) in &counts {
                writeln!(payload, "{w} {c}").unwrap();
            }
            let summary = format!(
                "sample len={} samples={} seed={seed} chi2={:.3} dof={}",
                len + 1,
                report.total,
                report.statistic,
                report.dof
            );
            Ok(if report.incompatible.is_empty() {
                ok(summary, payload)
            } else {
                fail(format!("{summary} incompatible={}", report.incompatible.len()), payload)
            })
        }
        SceneryCommand::Compare { a, b, len, pairs } => {
            let da = law(&load_cube(a)?, *len, *pairs)?;
            let db = law(&load_cube(b)?, *len, *pairs)?;
            Ok(if distributions_equal(&da, &db)? {
                ok(format!("equal len={}", da.word_len()), "")
            } else {
                let words: std::collections::BTreeSet<_> = da.iter().chain(db.iter()).map(|(w, _)| w).collect();
                let differing = words.iter().filter(|w| da.prob(w) != db.prob(w)).count();
                fail(format!("differ len={} words={differing}", da.word_len()), "")
            })
        }
        SceneryCommand::Bernoulli { p, len } => {
            let d = bernoulli_product(*p, *len)?;
            Ok(ok(format!("bernoulli p={p} len={len} words={}", d.support_size()), d.to_string()))
        }
    }
}

fn lattice(command: &LatticeCommand) -> CliResult {
    match command {
        LatticeCommand::Extend { function, out } => {
            let g = extend_to_lattice(&load_cube(function)?);
            let summary = format!("lattice n={} cells={}", g.n(), g.cell().len());
            Ok(ok(summary, emit(write_lattice(&g), out.as_deref())?))
        }
        LatticeCommand::Verify { file } => {
            let g = load(file, parse_lattice)?;
            Ok(match verify_lattice_bias(&g) {
                Some(p) => ok(format!("biased p={p}"), ""),
                None => {
                    let counts = lattice_bias_counts(&g);
                    let (lo, hi) = (counts.iter().min().unwrap(), counts.iter().max().unwrap());
                    fail(format!("biased none: neighbor counts range {lo}..={hi}"), "")
                }
            })
        }
    }
}

fn cayley(command: &CayleyCommand, threads: usize) -> CliResult {
    match command {
        CayleyCommand::Search { gens, p, pmax } => {
            let found = search_cayley_threaded(gens, *pmax, *p, threads)?;
            let gens: Vec<String> = gens.iter().map(ToString::to_string).collect();
            let mut payload = String::new();
            for f in &found {
                writeln!(payload, "{} {f}", f.period()).unwrap();
            }
            let summary = format!("cayley gens={} p={p} pmax={pmax} classes={}", gens.join(","), found.len());
            Ok(if found.is_empty() {
                fail(summary, payload)
            } else {
                ok(summary, payload)
            })
        }
        CayleyCommand::Verify { file } => {
            let f = load(file, parse_cayley)?;
            Ok(match verify_cayley_bias(&f) {
                Some(p) => ok(format!("biased p={p}"), ""),
                None => fail("biased none: profile not constant", ""),
            })
        }
        CayleyCommand::Construct { a, b, out } => {
            let f = cayley_half_biased(*a, *b)?;
            Ok(ok(format!("cayleyz period={}", f.period()), emit(write_cayley(&f), out.as_deref())?))
        }
    }
}

fn tree(command: &TreeCommand, seed: Option<u64>) -> CliResult {
    let TreeCommand::Greedy { deg, depth, b } = command;
    let t = tree_greedy(*deg, *depth, *b, seed)?;
    let mut payload = String::new();
    let mut start = 0;
    let mut width = 1;
    for level in 0..=*depth {
        let signs: String = t.labels()[start..start + width]
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        writeln!(payload, "{level} {signs}").unwrap();
        start += width;
        width *= if level == 0 { *deg } else { deg - 1 };
    }
    let mode = seed.map_or("deterministic".to_string(), |s| format!("seed={s}"));
    let summary = format!("tree deg={deg} depth={depth} vertices={} {mode}", t.num_vertices());
    Ok(match verify_tree_bias(&t) {
        Some(p) => ok(format!("{summary} p={p}"), payload),
        None => fail(format!("{summary} quota not met"), payload),
    })
}
