//! `fwe` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use fwe_core::catalog::{Catalog, CatalogEntry, Source};
use fwe_core::conjecture::verify_conjecture;
use fwe_core::moments::{construct_enumerator, search, CandidateQ, Parity};
use fwe_core::poly::{fwe_classify, Duality};
use fwe_core::rings::{builtin_ring, distance_bound, extremal_search, BoundKind, RingSpec};
use fwe_core::zeta::{functional_eq_check, rh_check, zeta_poly, RhStatus, ZetaResult, DEFAULT_PRECISION_BITS};
use fwe_core::{Error, ExactNumber, HomogPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

const DEFAULT_CATALOG: &str = "fwe-catalog.json";

#[derive(Parser, Debug)]
#[command(name = "fwe", version, about = "Exact search and zeta analysis of formal weight enumerators")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// User catalog file (default: $FWE_CATALOG or ./fwe-catalog.json).
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moment determinant, candidate q, and constructed enumerators.
    Search {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        parity: Option<Parity>,
    },
    /// Enumerators of degree 2n (even) or 2n+1 (odd) for a given q.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        parity: Parity,
        #[arg(long)]
        q: ExactNumber,
    },
    /// Zeta polynomial of a catalog entry.
    Zeta(Target),
    /// Riemann hypothesis verdict for a catalog entry.
    Rh {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
        /// Decimal such as 1e-30, or an exact rational such as 1/1000.
        #[arg(long, default_value = "1e-30")]
        tolerance: String,
    },
    /// Extremal enumerator of a given degree inside a two-generator ring.
    Extremal {
        #[arg(long, required_unless_present_all = ["gen_inv", "gen_anti", "q"])]
        ring: Option<String>,
        #[arg(long, value_name = "FILE", requires_all = ["gen_anti", "q"], conflicts_with = "ring")]
        gen_inv: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "gen_inv")]
        gen_anti: Option<PathBuf>,
        #[arg(long, requires = "gen_inv")]
        q: Option<ExactNumber>,
        #[arg(long)]
        degree: usize,
    },
    /// Check the Chebyshev ratio between consecutive moment determinants.
    Conjecture {
        #[arg(long)]
        max_n: usize,
    },
    /// Inspect or extend the catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Target {
    /// Catalog entry name.
    #[arg(long)]
    entry: Option<String>,
    /// JSON file holding a single catalog entry.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Built-in and user entries.
    List,
    /// One entry in canonical JSON.
    Show { name: String },
    /// Classify a polynomial and append it to the user catalog.
    Add {
        #[arg(long)]
        name: String,
        #[arg(long)]
        q: ExactNumber,
        /// Comma-separated A_0, ..., A_n.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        coeffs: Vec<ExactNumber>,
    },
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
    catalog_path: PathBuf,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let catalog_path = cli
        .catalog
        .clone()
        .or_else(|| std::env::var_os("FWE_CATALOG").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CATALOG));
    let mut ctx = Ctx { out, json: cli.json, catalog_path };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Internal(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> Outcome {
    match cmd {
        Command::Search { degree, parity } => cmd_search(ctx, degree, parity),
        Command::Construct { n, parity, q } => cmd_construct(ctx, n, parity, q),
        Command::Zeta(t) => cmd_zeta(ctx, &t),
        Command::Rh { target, precision_bits, tolerance } => cmd_rh(ctx, &target, precision_bits, &tolerance),
        Command::Extremal { ring, gen_inv, gen_anti, q, degree } => {
            let spec = match (ring, gen_inv, gen_anti, q) {
                (Some(name), ..) => builtin_ring(&name)?,
                (None, Some(a), Some(b), Some(q)) => {
                    let sqrt_q = q.sqrt_in_field()?;
                    RingSpec::new(q, sqrt_q, read_poly(&a)?, read_poly(&b)?)?
                }
                _ => return Err(Failure::Usage("give --ring or all of --gen-inv, --gen-anti, --q".into())),
            };
            cmd_extremal(ctx, &spec, degree)
        }
        Command::Conjecture { max_n } => cmd_conjecture(ctx, max_n),
        Command::Catalog(c) => cmd_catalog(ctx, c),
    }
}

fn cmd_search(ctx: &mut Ctx, degree: usize, parity: Option<Parity>) -> Outcome {
    let (n, implied) = Parity::split_degree(degree);
    if let Some(p) = parity.filter(|p| *p != implied) {
        return Err(Failure::Usage(format!("degree {degree} has {implied} parity, not {p}")));
    }
    if n == 0 {
        return Err(Failure::Usage(format!("degree must be at least 2, got {degree}")));
    }
    let report = search(degree)?;
    if ctx.json {
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&report).map_err(Error::from)?)?;
        return Ok(EXIT_OK);
    }
    let var = report.parity.var();
    let label = match report.parity {
        Parity::Even => format!("|A({n},q)|"),
        Parity::Odd => format!("|B({n},q)| (t = sqrt(q))"),
    };
    writeln!(ctx.out, "degree {degree}: n = {n}, parity {}", report.parity)?;
    writeln!(ctx.out, "{label} = {}", report.factorization.render_factored())?;
    if !report.factorization.unresolved.is_empty() {
        writeln!(ctx.out, "factors without admissible roots of degree <= 2:")?;
        for (f, k) in &report.factorization.unresolved {
            writeln!(ctx.out, "  ({f})^{k}")?;
        }
    }
    let qs: Vec<String> = report.discoveries.iter().map(|d| d.candidate.q.to_string()).collect();
    writeln!(ctx.out, "candidates: {}", if qs.is_empty() { "none".into() } else { qs.join(", ") })?;
    for d in &report.discoveries {
        let c = &d.candidate;
        let t = match (&c.t, var) {
            (Some(t), 't') => format!(", t = {t}"),
            _ => String::new(),
        };
        let tag = if d.new { "new" } else { "known" };
        writeln!(ctx.out, "q = {}{t} ({tag}; minimal polynomial {})", c.q, c.minimal_polynomial)?;
        for w in &d.enumerators {
            writeln!(ctx.out, "  W = {w}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_construct(ctx: &mut Ctx, n: usize, parity: Parity, q: ExactNumber) -> Outcome {
    let cand = CandidateQ::from_q(q)?;
    let ws = match construct_enumerator(n, parity, &cand) {
        Err(Error::Inconsistent(msg)) => {
            writeln!(ctx.out, "no enumerator: {msg}")?;
            return Ok(EXIT_FAILURE);
        }
        r => r?,
    };
    if ctx.json {
        let v = json!({ "n": n, "parity": parity, "q": cand.q, "enumerators": ws });
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
    } else {
        for w in &ws {
            writeln!(ctx.out, "W = {w}")?;
        }
    }
    Ok(EXIT_OK)
}

fn load_user_catalog(path: &Path) -> Result<Option<Catalog>, Error> {
    if path.exists() {
        Catalog::load(path).map(Some)
    } else {
        Ok(None)
    }
}

fn find_entry(ctx: &Ctx, name: &str) -> Result<CatalogEntry, Error> {
    if let Some(cat) = load_user_catalog(&ctx.catalog_path)? {
        if let Some(e) = cat.get(name) {
            return Ok(e.clone());
        }
    }
    Catalog::builtin().lookup(name).cloned()
}

fn resolve(ctx: &Ctx, t: &Target) -> Result<CatalogEntry, Error> {
    match (&t.entry, &t.file) {
        (Some(name), _) => find_entry(ctx, name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let entry: CatalogEntry = serde_json::from_str(&text)
                .map_err(|e| Error::Catalog { entry: path.display().to_string(), msg: e.to_string() })?;
            entry.validate()?;
            Ok(entry)
        }
        (None, None) => Err(Error::Precondition("give --entry or --file".into())),
    }
}

/// A homogeneous polynomial from JSON: either `{"n", "coeffs"}` or a
/// catalog entry.
fn read_poly(path: &Path) -> Result<HomogPoly, Error> {
    let text = std::fs::read_to_string(path)?;
    if let Ok(p) = serde_json::from_str::<HomogPoly>(&text) {
        return Ok(p);
    }
    let entry: CatalogEntry = serde_json::from_str(&text)
        .map_err(|e| Error::Catalog { entry: path.display().to_string(), msg: e.to_string() })?;
    Ok(entry.poly())
}

fn zeta_of(entry: &CatalogEntry) -> Result<ZetaResult, Error> {
    zeta_poly(&entry.poly(), entry.q())
}

fn cmd_zeta(ctx: &mut Ctx, t: &Target) -> Outcome {
    let entry = resolve(ctx, t)?;
    let z = zeta_of(&entry)?;
    let sqrt_q = entry.sqrt_q();
    let fe = functional_eq_check(&z, entry.q(), sqrt_q.as_ref()).ok();
    if ctx.json {
        let v = json!({
            "name": entry.name,
            "q": entry.q(),
            "p": z.p.coeffs(),
            "two_g": z.two_g,
            "class": z.duality,
            "functional_equation": fe,
        });
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
        return Ok(EXIT_OK);
    }
    writeln!(ctx.out, "{} (q = {}, n = {}, d = {})", entry.name, entry.q(), z.n, z.d)?;
    writeln!(ctx.out, "P(T) = {}", z.p)?;
    writeln!(ctx.out, "2g = {}", z.two_g)?;
    writeln!(ctx.out, "class: {}", z.duality)?;
    let fe_text = match fe {
        Some(true) => "holds",
        Some(false) => "does not hold",
        None => "not checked (sqrt(q) outside the coefficient field)",
    };
    writeln!(ctx.out, "functional equation: {fe_text}")?;
    Ok(EXIT_OK)
}

fn parse_tolerance(s: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::Usage(format!("invalid tolerance `{s}`"));
    let t = if let Some((m, e)) = s.split_once(['e', 'E']) {
        let exp: i32 = e.parse().map_err(|_| bad())?;
        let (int, frac) = m.split_once('.').unwrap_or((m, ""));
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let shift = exp - frac.len() as i32;
        let ten = BigInt::from(10);
        if shift >= 0 {
            BigRational::from_integer(digits * ten.pow(shift as u32))
        } else {
            BigRational::new(digits, ten.pow((-shift) as u32))
        }
    } else {
        let x: ExactNumber = s.parse().map_err(|_| bad())?;
        x.as_rational().cloned().ok_or_else(bad)?
    };
    if t <= BigRational::from_integer(0.into()) {
        return Err(bad());
    }
    Ok(t)
}

fn cmd_rh(ctx: &mut Ctx, t: &Target, bits: u32, tolerance: &str) -> Outcome {
    let tol = parse_tolerance(tolerance)?;
    let entry = resolve(ctx, t)?;
    let z = zeta_of(&entry)?;
    let v = rh_check(&z, entry.q(), bits, &tol);
    if ctx.json {
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
    } else {
        writeln!(ctx.out, "{} (q = {}): P(T) = {}", entry.name, entry.q(), z.p)?;
        writeln!(ctx.out, "status: {}", v.status)?;
        writeln!(ctx.out, "method: {}", v.method)?;
        for w in &v.witnesses {
            writeln!(ctx.out, "witness: {}: {}", w.description, w.value)?;
        }
        writeln!(ctx.out, "precision bits: {}", v.precision_bits)?;
    }
    Ok(if v.status == RhStatus::Indeterminate { EXIT_INDETERMINATE } else { EXIT_OK })
}

fn cmd_extremal(ctx: &mut Ctx, r: &RingSpec, degree: usize) -> Outcome {
    let x = match extremal_search(r, degree) {
        Err(e @ (Error::NoEnumerator(_) | Error::DegenerateRing(_))) => {
            writeln!(ctx.out, "{e}")?;
            return Ok(EXIT_FAILURE);
        }
        res => res?,
    };
    let genus = distance_bound(BoundKind::GenusNonneg, degree);
    if ctx.json {
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&x).map_err(Error::from)?)?;
        return Ok(EXIT_OK);
    }
    let terms: Vec<String> = x
        .combination
        .iter()
        .map(|((l, m), c)| {
            let g = match l {
                0 => String::new(),
                1 => "*G".into(),
                l => format!("*G^{l}"),
            };
            let f = if *m == 0 { "*F".into() } else { format!("*F^{}", 2 * m + 1) };
            format!("({c}){g}{f}")
        })
        .collect();
    writeln!(ctx.out, "degree {degree}, q = {}, G = {}, F = {}", r.q, r.gen_inv, r.gen_anti)?;
    writeln!(ctx.out, "W = {}", terms.join(" + "))?;
    writeln!(ctx.out, "  = {}", x.w)?;
    writeln!(ctx.out, "d = {} (bound from 2g >= 0: {genus})", x.d)?;
    Ok(EXIT_OK)
}

fn cmd_conjecture(ctx: &mut Ctx, max_n: usize) -> Outcome {
    let report = verify_conjecture(max_n)?;
    if ctx.json {
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&report).map_err(Error::from)?)?;
    } else {
        for r in &report.results {
            writeln!(ctx.out, "n = {:>3}  {}  |A(n,q)| = {}", r.n, if r.holds { "holds" } else { "FAILS" }, r.lhs)?;
            if !r.holds {
                writeln!(ctx.out, "          rhs = {}", r.rhs)?;
            }
        }
    }
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_catalog(ctx: &mut Ctx, c: CatalogCommand) -> Outcome {
    match c {
        CatalogCommand::List => {
            let mut all = Catalog::builtin().entries;
            if let Some(user) = load_user_catalog(&ctx.catalog_path)? {
                all.extend(user.entries);
            }
            if ctx.json {
                let names: Vec<_> = all
                    .iter()
                    .map(|e| json!({ "name": e.name, "n": e.n, "q": e.q(), "class": e.class, "source": e.source }))
                    .collect();
                writeln!(ctx.out, "{}", serde_json::to_string_pretty(&names).map_err(Error::from)?)?;
            } else {
                for e in &all {
                    let src = match e.source {
                        Source::Builtin => "builtin",
                        Source::Discovered => "discovered",
                    };
                    let (q, class) = (e.q().to_string(), e.class.to_string());
                    writeln!(ctx.out, "{:<16} n = {:<3} q = {q:<16} {class:<15} {src}", e.name, e.n)?;
                }
            }
            Ok(EXIT_OK)
        }
        CatalogCommand::Show { name } => {
            let e = find_entry(ctx, &name)?;
            if ctx.json {
                writeln!(ctx.out, "{}", serde_json::to_string_pretty(&e).map_err(Error::from)?)?;
            } else {
                writeln!(ctx.out, "{} (n = {}, q = {}, {})", e.name, e.n, e.q(), e.class)?;
                writeln!(ctx.out, "W = {}", e.poly())?;
                let coeffs: Vec<String> = e.coeffs.iter().map(ToString::to_string).collect();
                writeln!(ctx.out, "coefficients: {}", coeffs.join(", "))?;
                if let Some(z) = &e.zeta_coeffs {
                    let z: Vec<String> = z.iter().map(ToString::to_string).collect();
                    writeln!(ctx.out, "zeta coefficients: {}", z.join(", "))?;
                }
                if let Some(s) = &e.rh_status {
                    writeln!(ctx.out, "rh: {s}")?;
                }
            }
            Ok(EXIT_OK)
        }
        CatalogCommand::Add { name, q, coeffs } => {
            if coeffs.is_empty() {
                return Err(Failure::Usage("--coeffs needs at least one value".into()));
            }
            let w = HomogPoly::new(coeffs);
            let sqrt_q = q.sqrt_in_field()?;
            let class = fwe_classify(&w, &q, sqrt_q.as_ref())?;
            let mut entry = CatalogEntry::new(&name, &w, q.clone(), class, Source::Discovered);
            if class != Duality::Neither {
                if let Ok(z) = zeta_poly(&w, &q) {
                    let v = rh_check(&z, &q, DEFAULT_PRECISION_BITS, &parse_tolerance("1e-30")?);
                    entry.zeta_coeffs = Some(z.p.coeffs().to_vec());
                    entry.two_g = Some(z.two_g);
                    entry.rh_status = Some(v.status.to_string());
                }
            }
            let path = ctx.catalog_path.clone();
            Catalog::append(&path, entry)?;
            writeln!(ctx.out, "added {name} ({class}) to {}", path.display())?;
            Ok(EXIT_OK)
        }
    }
}
