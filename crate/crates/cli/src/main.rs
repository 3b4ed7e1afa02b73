use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use lsmu::arrays::{agl_pa, circle_one_factorization, cyclic_latin, half_agl_pa, verify_array, zero_sum_oa, CodeArray};
use lsmu::designcore::{classify_flat, Configuration};
use lsmu::hdesign::{lh_expand, lh_from_ls, verify_h, verify_lh, LargeSetH};
use lsmu::io::{read_file, read_file_lenient, write_artifact, Artifact};
use lsmu::lsops::{part_expand, perm_ls, union_ls, verify_ls, verify_steiner};
use lsmu::paperdata::{derived_design, extend_complement, lh_7_2, ls_3_4_10, ls_3_4_10_3, ls_4_5_11_2, seed, Seed};
use lsmu::recursion::{double_ls, quad_ls, rec4n_driver};
use lsmu::search::search_pa;
use lsmu::{Design, Error, LargeSet, Violation};

#[derive(Parser)]
#[command(name = "lsmu", version, about = "Build and verify large sets of Steiner systems and H-designs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated or compiled-in object.
    Gen {
        #[command(subcommand)]
        what: Gen,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Derived design through a point.
    Derive {
        #[arg(long)]
        point: u16,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// S(t,t+1,2t+3) to S(t+1,t+2,2t+4) by complements.
    Extend {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Union of large sets (or designs) with the same t, k, n.
    Combine {
        #[arg(short, long, num_args = 1, required = true)]
        input: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// One system per row of a PA or OD.
    PermLs {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        pa: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Fix the first `a-size` points and permute the rest by a PA.
    PartExpand {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        a_size: usize,
        #[arg(short, long)]
        pa: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// LS(3,4,n;μ) to LS(3,4,2n;μ).
    Double(Stage),
    /// LS(3,4,n;μ) to LS(3,4,4n;μ).
    Quad(Stage),
    /// LS(3,4,n;μ) to LS(3,4,2^m·n;μ).
    Pow2 {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        stage: Stage,
    },
    /// LH(n,g,4,3) from an LS(3,4,n;g) and an OA(3,4,g).
    LhFromLs {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        oa: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// LH(n,g,4,3) to LH(n,g·h,4,3) with an OA(3,4,h).
    LhExpand {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        oa: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively verify a file; exit 1 on the first violation.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        expect: Option<Kind>,
        #[arg(long)]
        mu: Option<u64>,
    },
    /// Search for a PA_λ(k,n,n).
    SearchPa {
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Seconds.
        #[arg(long, default_value_t = 60)]
        budget: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Parameters and counts; with --parts, the block census by configuration.
    Info {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        parts: Option<usize>,
    },
}

#[derive(clap::Args)]
struct Stage {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    pa: PathBuf,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    /// OA of strength t − 1 with t columns over Z_g.
    ZeroSumOa {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        g: usize,
    },
    /// PA_2(2,q,q) from the affine maps of GF(q).
    AglPa {
        #[arg(long)]
        q: usize,
    },
    /// PA_1(2,q,q) for q ≡ 3 (mod 4).
    HalfAglPa {
        #[arg(long)]
        q: usize,
    },
    /// Circle one-factorization of K_n.
    OneFactorization {
        #[arg(long)]
        n: usize,
    },
    /// Cyclic Latin square of order v.
    Latin {
        #[arg(long)]
        v: usize,
    },
    /// A compiled-in seed; permutation tables are written as the large set they generate.
    Seed {
        #[arg(long)]
        name: String,
    },
    /// LS(3,4,10;μ) from copies of the μ = 2 and μ = 3 sets.
    #[command(name = "ls-3-4-10")]
    Ls3410 {
        #[arg(long)]
        mu: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Design,
    Ls,
    H,
    Lh,
    Array,
    Factorization,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Design => "design",
            Kind::Ls => "ls",
            Kind::H => "h",
            Kind::Lh => "lh",
            Kind::Array => "array",
            Kind::Factorization => "factorization",
        }
    }
}

/// Reasons to stop, each with its exit code.
enum Fail {
    Verify(String),
    Usage(String),
    Search(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Unverified(v) => Fail::Verify(v.to_string()),
            Error::SearchFailed { .. } | Error::Infeasible(_) => Fail::Search(e.to_string()),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<Violation> for Fail {
    fn from(v: Violation) -> Self {
        Fail::Verify(v.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Search(m)) => {
            eprintln!("search failed: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(out: Option<&Path>, a: &Artifact) -> Res<()> {
    match out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))?);
            write_artifact(&mut w, a)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write_artifact(&mut w, a)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn load(p: &Path) -> Res<Artifact> {
    read_file(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))
}

fn wrong(p: &Path, want: &str, got: &Artifact) -> Fail {
    Fail::Usage(format!("{}: expected {want}, found {}", p.display(), got.kind_name()))
}

fn load_design(p: &Path) -> Res<Design> {
    match load(p)? {
        Artifact::Design(d) => Ok(d),
        other => Err(wrong(p, "design", &other)),
    }
}

fn load_ls(p: &Path) -> Res<LargeSet> {
    match load(p)? {
        Artifact::LargeSet(l) => Ok(l),
        other => Err(wrong(p, "ls", &other)),
    }
}

/// A design counts as a one-member large set with μ = 1.
fn load_ls_or_design(p: &Path) -> Res<LargeSet> {
    match load(p)? {
        Artifact::LargeSet(l) => Ok(l),
        Artifact::Design(d) => Ok(LargeSet::new(d.t(), d.k(), d.n(), 1, vec![d])?),
        other => Err(wrong(p, "ls or design", &other)),
    }
}

fn load_lh(p: &Path) -> Res<LargeSetH> {
    match load(p)? {
        Artifact::LargeSetH(l) => Ok(l),
        other => Err(wrong(p, "lh", &other)),
    }
}

fn load_array(p: &Path) -> Res<CodeArray> {
    match load(p)? {
        Artifact::Array(a) => Ok(a),
        other => Err(wrong(p, "array", &other)),
    }
}

fn run(cmd: Cmd) -> Res<()> {
    match cmd {
        Cmd::Gen { what, out } => emit(out.as_deref(), &generate(what)?),
        Cmd::Derive { point, input, out } => {
            let d = derived_design(&load_design(&input)?, point)?;
            emit(out.as_deref(), &Artifact::Design(d))
        }
        Cmd::Extend { input, out } => {
            let d = extend_complement(&load_design(&input)?)?;
            emit(out.as_deref(), &Artifact::Design(d))
        }
        Cmd::Combine { input, out } => {
            let mut sets = input.iter().map(|p| load_ls_or_design(p));
            let mut acc = sets.next().expect("clap requires one input")?;
            for s in sets {
                acc = union_ls(&acc, &s?)?;
            }
            verify_ls(&acc)?;
            emit(out.as_deref(), &Artifact::LargeSet(acc))
        }
        Cmd::PermLs { input, pa, out } => {
            let ls = perm_ls(&load_design(&input)?, &load_array(&pa)?)?;
            emit(out.as_deref(), &Artifact::LargeSet(ls))
        }
        Cmd::PartExpand { input, a_size, pa, out } => {
            let ls = part_expand(&load_design(&input)?, a_size, &load_array(&pa)?)?;
            emit(out.as_deref(), &Artifact::LargeSet(ls))
        }
        Cmd::Double(s) => {
            let ls = double_ls(&load_ls(&s.input)?, &load_array(&s.pa)?)?;
            emit(s.out.as_deref(), &Artifact::LargeSet(ls))
        }
        Cmd::Quad(s) => {
            let ls = load_ls(&s.input)?;
            let f = circle_one_factorization(ls.n)?;
            let latin = cyclic_latin(ls.n - 1)?;
            let out = quad_ls(&ls, &load_array(&s.pa)?, &f, &latin)?;
            emit(s.out.as_deref(), &Artifact::LargeSet(out))
        }
        Cmd::Pow2 { m, stage } => {
            let out = rec4n_driver(&load_ls(&stage.input)?, &load_array(&stage.pa)?, m)?;
            emit(stage.out.as_deref(), &Artifact::LargeSet(out))
        }
        Cmd::LhFromLs { input, oa, out } => {
            let lh = lh_from_ls(&load_ls(&input)?, &load_array(&oa)?)?;
            emit(out.as_deref(), &Artifact::LargeSetH(lh))
        }
        Cmd::LhExpand { input, oa, out } => {
            let lh = lh_expand(&load_lh(&input)?, &load_array(&oa)?)?;
            emit(out.as_deref(), &Artifact::LargeSetH(lh))
        }
        Cmd::Verify { input, expect, mu } => verify(&input, expect, mu),
        Cmd::SearchPa { lambda, k, n, seed, budget, out } => {
            let pa = search_pa(lambda, k, n, seed, Duration::from_secs(budget))?;
            emit(out.as_deref(), &Artifact::Array(pa))
        }
        Cmd::Info { input, parts } => info(&load(&input)?, parts),
    }
}

fn generate(what: Gen) -> Res<Artifact> {
    Ok(match what {
        Gen::ZeroSumOa { t, g } => Artifact::Array(zero_sum_oa(t, g)?),
        Gen::AglPa { q } => Artifact::Array(agl_pa(q)?),
        Gen::HalfAglPa { q } => Artifact::Array(half_agl_pa(q)?),
        Gen::OneFactorization { n } => Artifact::Factorization(circle_one_factorization(n)?),
        Gen::Latin { v } => Artifact::Array(cyclic_latin(v)?),
        Gen::Ls3410 { mu } => Artifact::LargeSet(ls_3_4_10(mu)?),
        Gen::Seed { name } => match seed(&name)? {
            Seed::Design(d) => Artifact::Design(d),
            Seed::Grouped(h) => Artifact::HDesign(h.to_grouped()?),
            Seed::Perms(_) => match name.as_str() {
                "perms_s11" => Artifact::LargeSet(ls_4_5_11_2()?),
                "perms_s10" => Artifact::LargeSet(ls_3_4_10_3()?),
                "perms_h7" => Artifact::LargeSetH(lh_7_2()?),
                _ => unreachable!("every permutation seed is listed"),
            },
        },
    })
}

fn verify(input: &Path, expect: Option<Kind>, mu: Option<u64>) -> Res<()> {
    let a = read_file_lenient(input).map_err(|e| match e {
        Error::Io(io) => Fail::Usage(format!("{}: {io}", input.display())),
        Error::Unverified(v) => Fail::Verify(v.to_string()),
        other => Fail::Verify(format!("{}: {other}", input.display())),
    })?;
    if let Some(k) = expect {
        if k.name() != a.kind_name() {
            return Err(Fail::Verify(format!("expected {}, file holds {}", k.name(), a.kind_name())));
        }
    }
    if let Some(m) = mu {
        match &a {
            Artifact::LargeSet(ls) if ls.mu != m => {
                return Err(Fail::Verify(format!("multiplicity {}, expected {m}", ls.mu)));
            }
            Artifact::LargeSet(_) => {}
            other => return Err(Fail::Usage(format!("--mu applies to large sets, file holds {}", other.kind_name()))),
        }
    }
    match &a {
        Artifact::Design(d) => verify_steiner(d)?,
        Artifact::LargeSet(ls) => verify_ls(ls)?,
        Artifact::HDesign(h) => verify_h(h)?,
        Artifact::LargeSetH(lh) => verify_lh(lh)?,
        Artifact::Array(arr) => verify_array(arr)?,
        Artifact::Factorization(f) => f.verify()?,
    }
    print(&format!("ok: {}\n", describe(&a)))
}

fn describe(a: &Artifact) -> String {
    match a {
        Artifact::Design(d) => format!("S({},{},{}) with {} blocks", d.t(), d.k(), d.n(), d.num_blocks()),
        Artifact::LargeSet(ls) => format!("LS({},{},{};{}) with {} systems", ls.t, ls.k, ls.n, ls.mu, ls.systems.len()),
        Artifact::HDesign(h) => format!("H({},{},{},{}) with {} blocks", h.n(), h.g(), h.k(), h.t(), h.num_blocks()),
        Artifact::LargeSetH(lh) => format!("LH({},{},{},{}) with {} systems", lh.n, lh.g, lh.k, lh.t, lh.systems.len()),
        Artifact::Array(arr) => format!("{:?} over {} symbols, {} x {}", arr.kind, arr.v, arr.rows, arr.cols),
        Artifact::Factorization(f) => format!("one-factorization of K_{}", f.n()),
    }
}

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        writeln!($out, $($arg)*).expect("writing to a String");
    }};
}

/// Writes to stdout; a closed pipe is not an error.
fn print(text: &str) -> Res<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn info(a: &Artifact, parts: Option<usize>) -> Res<()> {
    let mut out = String::new();
    outln!(out, "{}", describe(a));
    let designs: Vec<&Design> = match a {
        Artifact::Design(d) => vec![d],
        Artifact::LargeSet(ls) => {
            outln!(out, "expected systems: {}", ls.expected_systems());
            ls.systems.iter().collect()
        }
        Artifact::HDesign(h) => vec![h.design()],
        Artifact::LargeSetH(lh) => {
            outln!(out, "expected systems: {}", lh.expected_systems());
            lh.systems.iter().map(|h| h.design()).collect()
        }
        Artifact::Array(_) | Artifact::Factorization(_) => vec![],
    };
    if !designs.is_empty() {
        let blocks: usize = designs.iter().map(|d| d.num_blocks()).sum();
        outln!(out, "blocks: {blocks}");
    }
    let Some(parts) = parts else { return print(&out) };
    let Some(first) = designs.first() else {
        return Err(Fail::Usage(format!("--parts needs a design, file holds {}", a.kind_name())));
    };
    let n = first.n();
    if parts == 0 || n % parts != 0 {
        return Err(Fail::Usage(format!("{n} points do not split into {parts} equal parts")));
    }
    let mut census: std::collections::BTreeMap<Configuration, u64> = Default::default();
    for d in &designs {
        for b in d.blocks() {
            *census.entry(classify_flat(b, n / parts, parts)?).or_default() += 1;
        }
    }
    outln!(out, "configuration census over {parts} parts of {}:", n / parts);
    for (c, k) in census {
        outln!(out, "  {c} {k}");
    }
    print(&out)
}
