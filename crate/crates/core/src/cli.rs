//! Command-line front end. [`run`] returns the process exit status:
//! 0 success, 1 negative mathematical answer, 2 usage or parse error,
//! 3 capacity or budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::construct::{hyperfield_of_order, massouros, product, quotient, subgroup_closure};
use crate::enumerate::{enumerate_hyperfields, SearchOptions, MAX_ENUMERATION_ORDER};
use crate::error::Error;
use crate::galois::gf;
use crate::hyperfield::{Hyperfield, HyperfieldCandidate};
use crate::io_format::{
    parse_document, pretty_table, render_document, to_document, HyperfieldDocument,
};
use crate::iso::are_isomorphic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitStatus {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Capacity = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl From<&Error> for ExitStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Capacity(_) | Error::Budget { .. } => ExitStatus::Capacity,
            Error::Construction { .. } => ExitStatus::Negative,
            _ => ExitStatus::Usage,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "krasner",
    version,
    about = "Construct, verify, classify and render finite Krasner hyperfields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Massouros,
    Quotient,
    Product,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a verified hyperfield and write it as a document.
    Construct {
        #[arg(long)]
        order: Option<i64>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Base field as `p,k` (massouros, quotient).
        #[arg(long)]
        field: Option<String>,
        /// Subgroup generators as field indices, comma separated (quotient).
        #[arg(long, value_delimiter = ',')]
        gens: Vec<usize>,
        /// Two input documents (product).
        #[arg(long, num_args = 2)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every axiom; exit 0 iff all pass.
    Verify {
        path: PathBuf,
        #[arg(long)]
        report: bool,
    },
    /// Enumerate all hyperfields of an order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: i64,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Wall-clock budget in seconds.
        #[arg(long, default_value_t = 3600.0)]
        budget_secs: f64,
        /// Progress report interval in seconds.
        #[arg(long)]
        progress_secs: Option<f64>,
    },
    /// Decide isomorphism of two documents.
    Iso { a: PathBuf, b: PathBuf },
    /// Render the ⊕ and · tables.
    Show {
        path: PathBuf,
        /// Comma-separated display labels.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Failure carrying its exit status and the message for standard error.
struct Fail(ExitStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(ExitStatus::from(&e), e.to_string())
    }
}

type CmdResult = Result<ExitStatus, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail(ExitStatus::Usage, msg.into())
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() {
                ExitStatus::Usage.code()
            } else {
                0
            };
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Construct {
            order,
            method,
            field,
            gens,
            inputs,
            out,
        } => cmd_construct(&mut io, order, method, field, &gens, &inputs, out),
        Command::Verify { path, report } => cmd_verify(&mut io, &path, report),
        Command::Enumerate {
            order,
            count_only,
            out,
            jobs,
            budget_secs,
            progress_secs,
        } => cmd_enumerate(
            &mut io,
            order,
            count_only,
            out,
            jobs,
            budget_secs,
            progress_secs,
        ),
        Command::Iso { a, b } => cmd_iso(&mut io, &a, &b),
        Command::Show { path, labels } => cmd_show(&mut io, &path, labels),
    };
    match result {
        Ok(status) => status.code(),
        Err(Fail(status, msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            status.code()
        }
    }
}

fn read_document(path: &Path) -> Result<HyperfieldDocument, Fail> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_candidate(path: &Path) -> Result<(HyperfieldDocument, HyperfieldCandidate), Fail> {
    let doc = read_document(path)?;
    let c = doc
        .to_candidate()
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((doc, c))
}

fn write_file(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_field(spec: Option<&str>) -> Result<(u64, u32), Fail> {
    let spec = spec.ok_or_else(|| usage("--field p,k is required for this method"))?;
    let (p, k) = spec
        .split_once(',')
        .ok_or_else(|| usage(format!("--field expects p,k, got {spec:?}")))?;
    let p = p
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad prime {p:?}")))?;
    let k = k
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad exponent {k:?}")))?;
    Ok((p, k))
}

fn cmd_construct(
    io: &mut Io,
    order: Option<i64>,
    method: Method,
    field: Option<String>,
    gens: &[usize],
    inputs: &[PathBuf],
    out: Option<PathBuf>,
) -> CmdResult {
    if let Some(n) = order {
        if n < 2 {
            return Err(usage(format!("order must be at least 2, got {n}")));
        }
    }
    let (hyperfield, recipe): (Hyperfield, String) = match method {
        Method::Auto => {
            let n = order.ok_or_else(|| usage("--order is required for --method auto"))?;
            let s = hyperfield_of_order(usize::try_from(n).unwrap_or(usize::MAX))?;
            (s.hyperfield, s.recipe.to_string())
        }
        Method::Massouros => {
            let (p, k) = parse_field(field.as_deref())?;
            let f = gf(p, k)?;
            let label = if k == 1 {
                format!("massouros(GF({p}))")
            } else {
                format!("massouros(GF({p}^{k}))")
            };
            (massouros(&f)?, label)
        }
        Method::Quotient => {
            let (p, k) = parse_field(field.as_deref())?;
            let f = gf(p, k)?;
            let g = subgroup_closure(&f, gens)?;
            let base = if k == 1 {
                format!("GF({p})")
            } else {
                format!("GF({p}^{k})")
            };
            let gens: Vec<String> = gens.iter().map(usize::to_string).collect();
            (
                quotient(&f, &g)?,
                format!("quotient({base}, gens=[{}])", gens.join(",")),
            )
        }
        Method::Product => {
            let [a, b] = inputs else {
                return Err(usage("--inputs A B is required for --method product"));
            };
            let (_, ca) = read_candidate(a)?;
            let (_, cb) = read_candidate(b)?;
            let ha = Hyperfield::certify(ca, &a.display().to_string())?;
            let hb = Hyperfield::certify(cb, &b.display().to_string())?;
            (product(&ha, &hb)?, "product".to_string())
        }
    };
    if let Some(n) = order {
        if hyperfield.order() as i64 != n {
            return Err(usage(format!(
                "{recipe} has order {}, but --order {n} was requested",
                hyperfield.order()
            )));
        }
    }
    let text = render_document(&to_document(&hyperfield, None, Some(recipe.clone())));
    let summary = format!(
        "order {}, method {} ({recipe}), verification: pass",
        hyperfield.order(),
        method.to_possible_value().unwrap().get_name()
    );
    match out {
        Some(path) => {
            write_file(&path, &text)?;
            let _ = writeln!(io.out, "{summary}");
        }
        None => {
            let _ = write!(io.out, "{text}");
            let _ = writeln!(io.err, "{summary}");
        }
    }
    Ok(ExitStatus::Success)
}

fn cmd_verify(io: &mut Io, path: &Path, full: bool) -> CmdResult {
    let (_, c) = read_candidate(path)?;
    let report = c.verify();
    if full {
        let _ = write!(io.out, "{report}");
    }
    if report.passed() {
        let _ = writeln!(io.out, "pass");
        Ok(ExitStatus::Success)
    } else {
        let first = report.first_failure().unwrap();
        let _ = writeln!(io.out, "FAIL {first}");
        Ok(ExitStatus::Negative)
    }
}

fn cmd_enumerate(
    io: &mut Io,
    order: i64,
    count_only: bool,
    out: Option<PathBuf>,
    jobs: usize,
    budget_secs: f64,
    progress_secs: Option<f64>,
) -> CmdResult {
    if order < 2 {
        return Err(usage(format!("order must be at least 2, got {order}")));
    }
    if order > MAX_ENUMERATION_ORDER as i64 {
        return Err(Fail(
            ExitStatus::Capacity,
            format!("enumeration is limited to order {MAX_ENUMERATION_ORDER}"),
        ));
    }
    let seconds = |s: f64, name: &str| {
        Duration::try_from_secs_f64(s).map_err(|_| usage(format!("invalid {name} {s}")))
    };
    let options = SearchOptions {
        count_only,
        jobs,
        progress_interval: progress_secs
            .map(|s| seconds(s, "--progress-secs"))
            .transpose()?,
        budget: Some(seconds(budget_secs, "--budget-secs")?),
    };
    let result = match enumerate_hyperfields(order as usize, &options) {
        Ok(r) => r,
        Err(e @ Error::Budget { .. }) => {
            let _ = writeln!(io.err, "partial progress: {e}");
            return Ok(ExitStatus::Capacity);
        }
        Err(e) => return Err(e.into()),
    };
    let _ = writeln!(io.out, "{}", result.count());
    let _ = writeln!(
        io.err,
        "order {}: {} classes ({} rows expanded, {} verified)",
        result.order,
        result.count(),
        result.scanned,
        result.survivors
    );
    if let (Some(dir), false) = (out, count_only) {
        fs::create_dir_all(&dir)
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
        let mut prev: Option<String> = None;
        let mut k = 0;
        for (fp, h) in &result.classes {
            let digest = fp.digest();
            k = if prev.as_deref() == Some(digest.as_str()) {
                k + 1
            } else {
                0
            };
            let name = format!("order{}-{digest}-{k}.json", result.order);
            let doc = to_document(h, None, Some(format!("enumerated; {fp}")));
            write_file(&dir.join(name), &render_document(&doc))?;
            prev = Some(digest);
        }
    }
    Ok(ExitStatus::Success)
}

fn cmd_iso(io: &mut Io, a: &Path, b: &Path) -> CmdResult {
    let (_, ca) = read_candidate(a)?;
    let (_, cb) = read_candidate(b)?;
    let mut verified = Vec::with_capacity(2);
    for (path, c) in [(a, ca), (b, cb)] {
        match Hyperfield::certify(c, &path.display().to_string()) {
            Ok(h) => verified.push(h),
            Err(e) => {
                let _ = writeln!(io.out, "not a hyperfield: {e}");
                return Ok(ExitStatus::Negative);
            }
        }
    }
    match are_isomorphic(&verified[0], &verified[1]) {
        Some(w) => {
            let _ = writeln!(io.out, "isomorphic: {w}");
            Ok(ExitStatus::Success)
        }
        None => {
            let _ = writeln!(io.out, "not isomorphic");
            Ok(ExitStatus::Negative)
        }
    }
}

fn cmd_show(io: &mut Io, path: &Path, labels: Option<Vec<String>>) -> CmdResult {
    let (doc, c) = read_candidate(path)?;
    let labels = labels.or(doc.labels);
    let text = pretty_table(&c, labels.as_deref()).map_err(|e| usage(e.to_string()))?;
    let _ = write!(io.out, "{text}");
    Ok(ExitStatus::Success)
}
