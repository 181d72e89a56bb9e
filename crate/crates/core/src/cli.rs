//! Command-line front end. [`run`] parses arguments, runs one subcommand and
//! returns the exit status with the text to print.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::assemble::{crt_combine, split_surface, verify_congruence, verify_theorem_pipeline, CongruenceTarget, PipelineConfig};
use crate::catalog;
use crate::count::{count_points, count_points_buckets, count_points_naive, frobenius_profile, profile_criterion_check, FrobeniusProfile};
use crate::e8::{self, criterion_check, perm_to_aut, LatticeAut};
use crate::geom::{GeneralPosition, PlanePointSet};
use crate::io::ParseError;
use crate::linsys::parse_forms;
use crate::sextic::{
    derive_anticanonical, emit_genus4, emit_weierstrass, normalize_reduced, smoothness_check, Generators, Ring,
    Smoothness, WeightedSextic,
};

#[derive(Debug, Parser)]
#[command(name = "dp1", version, about = "Degree-1 del Pezzo surfaces over finite fields and their Frobenius action on E8")]
pub struct Cli {
    /// Worker threads for point counting.
    #[arg(long, global = true, env = "DP1_THREADS")]
    threads: Option<usize>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SexticInput {
    /// Sextic file.
    #[arg(long)]
    sextic: PathBuf,
    /// Reduce an integer sextic modulo this prime first.
    #[arg(long)]
    prime: Option<u32>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountMethod {
    Tables,
    Buckets,
    Naive,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a point set is in general position.
    Genpos {
        /// Point-set file.
        #[arg(long)]
        points: PathBuf,
    },
    /// Derive the anticanonical sextic relation of a blown-up point set.
    Derive {
        /// Point-set file.
        #[arg(long)]
        points: PathBuf,
        /// Generator forms of degrees 3, 3, 6, 9 to use instead of the echelon choice.
        #[arg(long)]
        generators: Option<PathBuf>,
        /// Also print the normalized sextic.
        #[arg(long)]
        normalize: bool,
    },
    /// Bring a sextic to the form w^2 + z^3 + F2 z^2 + F4 z + F6.
    Normalize {
        #[command(flatten)]
        input: SexticInput,
    },
    /// Decide smoothness of a reduced sextic.
    Smooth {
        #[command(flatten)]
        input: SexticInput,
    },
    /// Count points over F_{p^k}.
    Count {
        #[command(flatten)]
        input: SexticInput,
        /// Extension degree k.
        #[arg(long, default_value_t = 1)]
        ext: u32,
        #[arg(long, value_enum, default_value_t = CountMethod::Tables)]
        method: CountMethod,
    },
    /// Counts, traces, order and determinant for a set of extension degrees.
    Profile {
        #[command(flatten)]
        input: SexticInput,
        /// Divisor-closed extension degrees, e.g. 1,2,3,6.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        exps: Vec<u32>,
    },
    /// Frobenius criterion on profile files, or the lattice criterion on permutations.
    Criterion {
        /// Profile file (give three).
        #[arg(long)]
        profile: Vec<PathBuf>,
        /// Permutation of the eight points as 0-based images, e.g. 1,2,3,4,5,6,0,7.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        perm: Vec<usize>,
        /// Add an order-3 element of trace -4 to the lattice elements.
        #[arg(long)]
        with_trace_minus4: bool,
        /// Add -I to the lattice elements.
        #[arg(long)]
        with_minus_identity: bool,
    },
    /// CRT-combine reduced sextics over distinct primes into an integer sextic.
    Assemble {
        /// Sextic files over distinct primes.
        #[arg(long, required = true)]
        sextic: Vec<PathBuf>,
    },
    /// Eight rational points in general position and their split surface.
    SplitSurface {
        /// A prime greater than 7.
        #[arg(long)]
        p: u32,
    },
    /// Check an integer sextic against a target modulo M.
    VerifyCongruence {
        /// Integer sextic file.
        #[arg(long)]
        sextic: PathBuf,
        /// Target sextic file; defaults to the built-in family.
        #[arg(long)]
        target: Option<PathBuf>,
        /// Modulus for the target.
        #[arg(long, default_value_t = 105)]
        modulus: u64,
    },
    /// Weierstrass data y^2 = x^3 + a(t) x^2 + b(t) x + c(t) of the fibration.
    EmitCurve {
        #[command(flatten)]
        input: SexticInput,
    },
    /// The genus-4 curve w = 0.
    EmitGenus4 {
        #[command(flatten)]
        input: SexticInput,
    },
    /// The E8 lattice and its Weyl group.
    E8 {
        #[command(subcommand)]
        command: E8Command,
    },
    /// Rebuild the worked examples and the integer family end to end.
    VerifyPaper {
        /// Sextic over F_7 to use in place of the diagonal surface.
        #[arg(long)]
        f7: Option<PathBuf>,
        /// Move the F_3 points onto a line (negative control).
        #[arg(long)]
        collinear_f3: bool,
    },
}

#[derive(Debug, Subcommand)]
enum E8Command {
    /// Gram matrix of the simple roots and its determinant.
    Gram,
    /// Number of roots.
    Roots {
        /// Print every root in simple-root coordinates.
        #[arg(long)]
        list: bool,
    },
    /// Weyl group order by Schreier-Sims on the roots.
    Order,
    /// Order-3 elements of trace 5.
    Census,
    /// Lattice criterion on the worked examples, and the -I control.
    Criterion,
}

/// Exit status and the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Checked(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Res = Result<(bool, String), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn checked(e: impl std::fmt::Display) -> Failure {
    Failure::Checked(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_file<T>(path: &Path, parse: impl Fn(&str) -> Result<T, ParseError>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_sextic(input: &SexticInput) -> Result<WeightedSextic, Failure> {
    let f = parse_file(&input.sextic, WeightedSextic::parse)?;
    match (f.ring(), input.prime) {
        (Ring::Z, Some(p)) => {
            if !crate::ff::is_prime(p) || p == 2 {
                return Err(usage(format!("--prime {p} is not an odd prime")));
            }
            Ok(f.reduce_mod(p))
        }
        (Ring::Z, None) => Err(usage("integer sextic needs --prime")),
        (Ring::Fp(q), Some(p)) if p != q => Err(usage(format!("sextic is over F_{q}, not F_{p}"))),
        _ => Ok(f),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);
    let result = dispatch(cli.command, threads);
    let (code, text, err) = match result {
        Ok((true, text)) => (0, text, String::new()),
        Ok((false, text)) => (1, text, String::new()),
        Err(Failure::Checked(e)) => (1, String::new(), format!("error: {e}\n")),
        Err(Failure::Usage(e)) => (2, String::new(), format!("error: {e}\n")),
    };
    match cli.out {
        Some(path) if !text.is_empty() => match std::fs::write(&path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: err },
            Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
        },
        _ => Outcome { code, stdout: text, stderr: err },
    }
}

fn dispatch(command: Command, threads: usize) -> Res {
    match command {
        Command::Genpos { points } => {
            let s = parse_file(&points, PlanePointSet::parse)?;
            let sig = s.permutation_signature();
            let mut out = format!(
                "orbits={:?}\nfrobenius order={} fixed={} sign={:+}\n",
                s.orbit_sizes(),
                sig.order,
                sig.fixed,
                sig.sign
            );
            Ok(match s.check_general_position() {
                GeneralPosition::Pass => {
                    out.push_str("general position: pass\n");
                    (true, out)
                }
                GeneralPosition::Fail(v) => {
                    writeln!(out, "general position: fail ({v})").expect("string write");
                    (false, out)
                }
            })
        }
        Command::Derive { points, generators, normalize } => {
            let s = parse_file(&points, PlanePointSet::parse)?;
            let overrides = match generators {
                Some(path) => {
                    let forms = parse_file(&path, |t| parse_forms(t, s.ctx().p()))?;
                    let [x, y, z, w]: [_; 4] =
                        forms.try_into().map_err(|_| usage(format!("{}: expected four forms", path.display())))?;
                    Some(Generators { x, y, z, w })
                }
                None => None,
            };
            let d = derive_anticanonical(&s, overrides.as_ref()).map_err(checked)?;
            let mut out = d.relation.to_text();
            if normalize {
                out.push_str(&normalize_reduced(&d.relation).map_err(checked)?.to_text());
            }
            Ok((true, out))
        }
        Command::Normalize { input } => {
            let f = load_sextic(&input)?;
            Ok((true, normalize_reduced(&f).map_err(checked)?.to_text()))
        }
        Command::Smooth { input } => {
            let f = load_sextic(&input)?;
            Ok(match smoothness_check(&f).map_err(checked)? {
                Smoothness::Smooth => (true, "smooth\n".into()),
                Smoothness::DegenerateDiscriminant => (false, "singular: discriminant vanishes identically\n".into()),
                Smoothness::Singular(w) => (false, format!("singular fiber={w}\n")),
            })
        }
        Command::Count { input, ext, method } => {
            let f = load_sextic(&input)?;
            if ext == 0 {
                return Err(usage("--ext must be at least 1"));
            }
            let n = match method {
                CountMethod::Tables => count_points(&f, ext, threads).map_err(checked)?,
                CountMethod::Naive => count_points_naive(&f, ext).map_err(checked)?,
                CountMethod::Buckets => match count_points_buckets(&f, ext).map_err(checked)? {
                    Some(b) => b.total,
                    None => return Err(checked("bucket method needs F2 = F4 = 0 and 6 | q - 1")),
                },
            };
            Ok((true, format!("count={n}\n")))
        }
        Command::Profile { input, exps } => {
            let f = load_sextic(&input)?;
            Ok((true, frobenius_profile(&f, &exps, threads).map_err(checked)?.to_text()))
        }
        Command::Criterion { profile, perm, with_trace_minus4, with_minus_identity } => {
            if !profile.is_empty() {
                let profiles = profile.iter().map(|p| parse_file(p, FrobeniusProfile::parse)).collect::<Result<Vec<_>, _>>()?;
                let r = profile_criterion_check(&profiles);
                return Ok((r.passed(), r.lines().join("\n") + "\n"));
            }
            if perm.len() % 8 != 0 {
                return Err(usage("--perm takes eight images"));
            }
            let mut elements = Vec::new();
            for chunk in perm.chunks(8) {
                let mut sorted = chunk.to_vec();
                sorted.sort_unstable();
                if sorted != (0..8).collect::<Vec<_>>() {
                    return Err(usage(format!("{chunk:?} is not a permutation of 0..8")));
                }
                elements.push(perm_to_aut(chunk.try_into().expect("eight images")));
            }
            if with_trace_minus4 {
                elements.push(trace_minus4()?);
            }
            if with_minus_identity {
                elements.push(LatticeAut::identity().neg());
            }
            if elements.is_empty() {
                return Err(usage("give --profile files or lattice elements"));
            }
            let r = criterion_check(&elements).map_err(checked)?;
            Ok((r.passed(), r.lines().join("\n") + "\n"))
        }
        Command::Assemble { sextic } => {
            let inputs = sextic.iter().map(|p| parse_file(p, WeightedSextic::parse)).collect::<Result<Vec<_>, _>>()?;
            Ok((true, crt_combine(&inputs).map_err(checked)?.to_text()))
        }
        Command::SplitSurface { p } => {
            let s = split_surface(p, threads).map_err(checked)?;
            Ok((true, format!("{}{}count={}\n", s.points.to_text(), s.sextic.to_text(), s.count)))
        }
        Command::VerifyCongruence { sextic, target, modulus } => {
            let f = parse_file(&sextic, WeightedSextic::parse)?;
            let target = match target {
                Some(path) => CongruenceTarget::new(modulus, parse_file(&path, WeightedSextic::parse)?).map_err(usage)?,
                None => catalog::family_target(),
            };
            let r = verify_congruence(&f, &target);
            if r.passed() {
                Ok((true, format!("congruent mod {}\n", r.modulus)))
            } else {
                let mut out = format!("not congruent mod {}\n", r.modulus);
                for e in &r.differing {
                    writeln!(out, "differs at {}", crate::sextic::format_monomial(&["x", "y", "z", "w"], e))
                        .expect("string write");
                }
                Ok((false, out))
            }
        }
        Command::EmitCurve { input } => {
            let f = match input.prime {
                None => parse_file(&input.sextic, WeightedSextic::parse)?,
                Some(_) => load_sextic(&input)?,
            };
            Ok((true, emit_weierstrass(&f).map_err(checked)?.to_text()))
        }
        Command::EmitGenus4 { input } => {
            let f = match input.prime {
                None => parse_file(&input.sextic, WeightedSextic::parse)?,
                Some(_) => load_sextic(&input)?,
            };
            Ok((true, emit_genus4(&f).to_text()))
        }
        Command::E8 { command } => e8_command(command),
        Command::VerifyPaper { f7, collinear_f3 } => {
            let f7_sextic = match f7 {
                Some(path) => Some(parse_file(&path, WeightedSextic::parse)?),
                None => None,
            };
            let report = verify_theorem_pipeline(PipelineConfig { threads, f7_sextic, collinear_f3 });
            Ok((report.passed(), report.to_string()))
        }
    }
}

fn trace_minus4() -> Result<LatticeAut, Failure> {
    let census = e8::order3_class_census();
    e8::trace_minus4_element(&census.subsystems).ok_or_else(|| checked("no four orthogonal A2 subsystems"))
}

fn e8_command(command: E8Command) -> Res {
    match command {
        E8Command::Gram => {
            let g = e8::gram();
            let mut out = String::new();
            for row in &g {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:2}")).collect();
                writeln!(out, "{}", cells.join(" ")).expect("string write");
            }
            let det = e8::determinant(&g);
            let even = (0..8).all(|i| g[i][i] % 2 == 0);
            writeln!(out, "det={det} even={even}").expect("string write");
            Ok((det == 1 && even, out))
        }
        E8Command::Roots { list } => {
            let roots = e8::roots();
            let mut out = format!("roots={}\n", roots.len());
            if list {
                for r in &roots {
                    let c = r.to_coords().expect("root");
                    writeln!(out, "{}", c.map(|x| x.to_string()).join(",")).expect("string write");
                }
            }
            Ok((roots.len() == 240, out))
        }
        E8Command::Order => {
            let n = e8::weyl_group_order();
            Ok((n == 696_729_600, format!("order={n}\n")))
        }
        E8Command::Census => {
            let c = e8::order3_class_census();
            let expected = e8::poly_product(&[&[1, 1, 1], &[-1, 1], &[-1, 1], &[-1, 1], &[-1, 1], &[-1, 1], &[-1, 1]]);
            let all_match = c.elements.iter().all(|m| e8::char_poly(m).to_vec() == expected);
            let out = format!(
                "pairs={} subsystems={} elements={} charpoly=(x^2+x+1)(x-1)^6:{}\n",
                c.pairs,
                c.subsystems.len(),
                c.elements.len(),
                if all_match { "all" } else { "not all" }
            );
            Ok((c.elements.len() == 2240 && all_match, out))
        }
        E8Command::Criterion => {
            let seven = perm_to_aut(&[1, 2, 3, 4, 5, 6, 0, 7]);
            let sigma = catalog::order6_points().frobenius_permutation();
            let six = perm_to_aut(&sigma.try_into().map_err(|_| checked("expected eight points"))?);
            let elements = [seven, six, six.mul(&six), trace_minus4()?];
            let r = criterion_check(&elements).map_err(checked)?;
            let control = criterion_check(&[LatticeAut::identity().neg()]).map_err(checked)?;
            let mut out = String::from("worked examples:\n");
            for line in r.lines() {
                writeln!(out, "  {line}").expect("string write");
            }
            writeln!(out, "control -I: {}", if control.passed() { "pass" } else { "fail" }).expect("string write");
            Ok((r.passed() && !control.passed(), out))
        }
    }
}
