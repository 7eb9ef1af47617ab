use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plcircle::dynamics::{
    common_fixed_set, displaces_all, orbital_arcs, ping_pong_search_named, throw_off_search, SearchBudget,
};
use plcircle::group::{
    invariant_measure, measure_arc, rot_hom_check, stieltjes_table, structure_decomposition, wreath_embed_finite,
    GroupGens, HomCheck,
};
use plcircle::rotation::{rotation_number_with, RotationResult};
use plcircle::thompson::{f_membership, qz_embed, solodov_pair, t_membership, wreath_ft_generators, xn_map};
use plcircle::{Arc, ArcSet, Error, PLCircleMap, PLIntervalMap, PLMap, Rational};

#[derive(Parser)]
#[command(name = "plcircle", version, about = "Exact computations with PL circle homeomorphisms")]
struct Cli {
    /// Also show decimal approximations of fractions
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Budget {
    #[arg(long, env = "PLCIRCLE_MAX_WORD_LENGTH", default_value_t = 6)]
    max_word_length: u32,
    #[arg(long, env = "PLCIRCLE_MAX_M", default_value_t = 8)]
    max_m: u32,
    #[arg(long, env = "PLCIRCLE_MAX_N", default_value_t = 64)]
    max_n: u32,
    #[arg(long, env = "PLCIRCLE_MAX_K", default_value_t = 8)]
    max_k: u32,
}

impl From<Budget> for SearchBudget {
    fn from(b: Budget) -> Self {
        SearchBudget {
            max_word_length: b.max_word_length,
            max_m: b.max_m,
            max_n: b.max_n,
            max_k: b.max_k,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rotation number
    Rot {
        map: PathBuf,
        #[arg(long, default_value_t = 64)]
        qmax: u64,
        #[arg(long, default_value_t = plcircle::rotation::DEFAULT_ITERATIONS)]
        iters: u64,
    },
    /// Fixed set
    Fix { map: PathBuf },
    /// Orbitals (components of the support)
    Orbitals { map: PathBuf },
    /// Composition, rightmost map first
    Compose {
        #[arg(required = true, num_args = 2..)]
        maps: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inverse
    Inv {
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer power
    Pow {
        map: PathBuf,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Common fixed set of several maps
    Fip {
        #[arg(required = true)]
        maps: Vec<PathBuf>,
    },
    /// Ping-pong certificate for two maps
    Pingpong {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Word displacing every trimmed component
    Throwoff {
        #[arg(long, required = true, num_args = 1..)]
        gens: Vec<PathBuf>,
        /// Intervals such as "(0,1/2),(1/2,1)"
        #[arg(long)]
        components: String,
        #[arg(long)]
        eps: Rational,
        #[command(flatten)]
        budget: Budget,
    },
    /// Additivity of the rotation number on a word ball
    CheckHom {
        #[arg(long, required = true, num_args = 1..)]
        gens: Vec<PathBuf>,
        #[arg(long, default_value_t = 4)]
        len: u32,
        #[arg(long, default_value_t = 64)]
        qmax: u64,
    },
    /// Wreath decomposition for a finite rotation quotient
    Decompose {
        #[arg(long, required = true, num_args = 1..)]
        gens: Vec<PathBuf>,
        #[arg(long, default_value_t = 4)]
        len: u32,
        #[arg(long, default_value_t = 64)]
        qmax: u64,
    },
    /// Invariant probability measure
    Measure {
        #[arg(long, required = true, num_args = 1..)]
        gens: Vec<PathBuf>,
        #[arg(long)]
        arc: Option<Arc>,
        #[arg(long, default_value_t = 4)]
        len: u32,
        #[arg(long, default_value_t = 64)]
        qmax: u64,
        /// Report the distribution-function table instead of atoms
        #[arg(long)]
        table: bool,
    },
    /// Wreath product of interval maps with Z/q
    EmbedWreath {
        #[arg(long, required = true, num_args = 1..)]
        base: Vec<PathBuf>,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// The map X_n
    Xn {
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Image of p/q under the embedding of Q/Z into T
    Qz {
        x: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the Solodov pair a, b
    Solodov {
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Membership in Thompson's groups T and F
    #[command(name = "check-T")]
    CheckT { map: PathBuf },
    /// Generators of F wreath Z/q inside T
    #[command(name = "embed-FT")]
    EmbedFt {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure modes, by exit status.
enum Failure {
    /// The analysis ran and the answer is negative.
    Negative(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FreeSubgroupEvidence(_) | Error::Inconclusive(_) => Failure::Negative(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_map(path: &Path) -> Result<PLMap, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    text.parse::<PLMap>()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_circle(path: &Path) -> Result<PLCircleMap, Failure> {
    read_map(path).map(PLMap::into_circle)
}

fn read_interval(path: &Path) -> Result<PLIntervalMap, Failure> {
    read_map(path)?
        .into_interval()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn read_gens(paths: &[PathBuf]) -> Result<GroupGens, Failure> {
    let mut gens = GroupGens::new();
    for p in paths {
        if gens.insert(stem(p), read_circle(p)?).is_some() {
            return Err(Failure::Usage(format!("duplicate generator name {}", stem(p))));
        }
    }
    Ok(gens)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(map: PLMap, out: Option<&Path>) -> Outcome {
    let text = map.to_text();
    match out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(format!("wrote {}", p.display()))
        }
        None => Ok(text.trim_end().to_string()),
    }
}

fn write_table(dir: &Path, gens: &BTreeMap<String, PLCircleMap>) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let mut lines = Vec::new();
    for (name, g) in gens {
        let p = dir.join(format!("{name}.plmap"));
        write_file(&p, &PLMap::Circle(g.clone()).to_text())?;
        lines.push(format!("wrote {}", p.display()));
    }
    Ok(lines.join("\n"))
}

struct Style {
    decimal: bool,
}

impl Style {
    fn frac(&self, r: &Rational) -> String {
        if self.decimal {
            format!("{} (≈ {:.6})", r.to_pq_string(), r.to_f64())
        } else {
            r.to_pq_string()
        }
    }
}

fn run(cmd: Command, show: &Style) -> Outcome {
    match cmd {
        Command::Rot { map, qmax, iters } => {
            let f = read_circle(&map)?;
            let r = rotation_number_with(&f, qmax, iters)?;
            let mut text = r.to_string();
            if show.decimal {
                if let RotationResult::Exact { value, .. } = &r {
                    text = format!("{text} ≈ {:.6}", value.to_f64());
                }
            }
            Ok(text)
        }
        Command::Fix { map } => Ok(read_circle(&map)?.fixed_set().to_string()),
        Command::Orbitals { map } => {
            let f = read_circle(&map)?;
            Ok(match orbital_arcs(&f) {
                None => "none".to_string(),
                Some(arcs) => arcs.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
            })
        }
        Command::Compose { maps, out } => {
            let mut acc = PLCircleMap::identity();
            for p in &maps {
                acc = acc.compose(&read_circle(p)?);
            }
            emit(PLMap::Circle(acc), out.as_deref())
        }
        Command::Inv { map, out } => {
            let result = match read_map(&map)? {
                PLMap::Circle(c) => PLMap::Circle(c.inverse()),
                PLMap::Interval(i) => PLMap::Interval(i.inverse()),
            };
            emit(result, out.as_deref())
        }
        Command::Pow { map, n, out } => {
            let result = match read_map(&map)? {
                PLMap::Circle(c) => PLMap::Circle(c.power(n)),
                PLMap::Interval(i) => PLMap::Interval(i.power(n)),
            };
            emit(result, out.as_deref())
        }
        Command::Fip { maps } => {
            let fs: Vec<PLCircleMap> = maps.iter().map(|p| read_circle(p)).collect::<Result<_, _>>()?;
            match common_fixed_set(&fs) {
                Ok(set) if !set.is_empty() => Ok(format!("common fixed set {set}")),
                Ok(_) => Err(Failure::Negative("common fixed set empty".into())),
                Err(Error::Precondition(m)) => Err(Failure::Negative(format!("common fixed set empty: {m}"))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Pingpong { a, b, budget } => {
            let (f, g) = (read_circle(&a)?, read_circle(&b)?);
            let (na, nb) = (stem(&a), stem(&b));
            match ping_pong_search_named((&na, &f), (&nb, &g), &budget.into())? {
                Some(cert) => Ok(cert.to_string()),
                None => Err(Failure::Negative("no ping-pong certificate within the budget".into())),
            }
        }
        Command::Throwoff { gens, components, eps, budget } => {
            let named: Vec<(String, PLIntervalMap)> =
                gens.iter().map(|p| Ok((stem(p), read_interval(p)?))).collect::<Result<_, Failure>>()?;
            let set: ArcSet = components.parse()?;
            let comps: Vec<(Rational, Rational)> = set
                .arcs()
                .iter()
                .map(|a| {
                    let end = a.end().value();
                    let end = if end.is_zero() { Rational::one() } else { end.clone() };
                    (a.start().value().clone(), end)
                })
                .collect();
            match throw_off_search(&named, &comps, &eps, &budget.into())? {
                Some((w, m)) => {
                    let checked = if displaces_all(&m, &comps, &eps) { "verified" } else { "NOT verified" };
                    Ok(format!("word {w}\n{checked}"))
                }
                None => Err(Failure::Negative("no displacing word within the budget".into())),
            }
        }
        Command::CheckHom { gens, len, qmax } => match rot_hom_check(&read_gens(&gens)?, len, qmax)? {
            HomCheck::Pass => Ok(format!("pass (word length {len})")),
            HomCheck::Counterexample(u, v) => Err(Failure::Negative(format!(
                "counterexample u = {u}, v = {v}: rot(uv) ≠ rot(u) + rot(v)"
            ))),
        },
        Command::Decompose { gens, len, qmax } => Ok(structure_decomposition(&read_gens(&gens)?, qmax, len)?.to_string()),
        Command::Measure { gens, arc, len, qmax, table } => {
            let gens = read_gens(&gens)?;
            let m = if table {
                stieltjes_table(&gens, len, qmax)?
            } else {
                invariant_measure(&gens, qmax, len)?
            };
            let mut text = m.to_string();
            if let Some(a) = arc {
                text.push_str(&format!("\nmeasure {a} = {}", show.frac(&measure_arc(&m, &a))));
            }
            Ok(text)
        }
        Command::EmbedWreath { base, q, out } => {
            let base: Vec<PLIntervalMap> = base.iter().map(|p| read_interval(p)).collect::<Result<_, _>>()?;
            write_table(&out, &wreath_embed_finite(&base, q)?)
        }
        Command::Xn { n, out } => emit(PLMap::Circle(xn_map(n)?.clone()), out.as_deref()),
        Command::Qz { x, out } => emit(PLMap::Circle(qz_embed(&x)?), out.as_deref()),
        Command::Solodov { out_dir } => {
            let (a, b) = solodov_pair();
            write_table(&out_dir, &BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]))
        }
        Command::CheckT { map } => {
            let f = read_circle(&map)?;
            let (t, fm) = (t_membership(&f), f_membership(&f));
            let report = format!("T {}\nF {}", if t { "yes" } else { "no" }, if fm { "yes" } else { "no" });
            if t {
                Ok(report)
            } else {
                Err(Failure::Negative(report))
            }
        }
        Command::EmbedFt { q, out } => write_table(&out, &wreath_ft_generators(q)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let show = Style { decimal: cli.decimal };
    match run(cli.command, &show) {
        Ok(text) => {
            let _ = writeln!(io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(text)) => {
            let _ = writeln!(io::stdout(), "{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(text)) => {
            eprintln!("error: {text}");
            ExitCode::from(2)
        }
    }
}
