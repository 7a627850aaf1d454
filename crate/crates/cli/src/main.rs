//! `faigle`: batch front end for the library.
//!
//! Exit status is 0 on success, 1 on bad input or a failed precondition,
//! and 2 when an internal consistency check fails.

mod json;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use faigle::congruence::{congruence_lattice, is_congruence_preserving_extension};
use faigle::dot::{lattice_to_dot, poset_to_dot};
use faigle::testkit::{enumerate_lattices, random_closure_candidates, EnumConfig, LatticeFilter};
use faigle::text::{
    parse_geometry, parse_lattice, parse_poset, write_congruence, write_geometry, write_lattice,
};
use faigle::{
    delta, extend_to_geometric, extend_to_rectangular, geom_of_lattice, roundtrip_geometry,
    roundtrip_lattice, ElemSet, Embedding, Error,
};

#[derive(Parser)]
#[command(
    name = "faigle",
    version,
    about = "Faigle geometries and semimodular lattice extensions"
)]
struct Cli {
    /// Output format.
    #[arg(long, short, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Report errors on stderr as a JSON object.
    #[arg(long, global = true)]
    error_json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check F∩, F↓, Pr, CP and FEP on a geometry file, with witnesses.
    CheckAxioms { input: PathBuf },
    /// The geometry of a semimodular lattice.
    Geom { input: PathBuf },
    /// The lattice of flats of a geometry.
    Flats { input: PathBuf },
    /// The closure of a set of ground elements in a geometry.
    Closure {
        input: PathBuf,
        /// Space- or comma-separated ground indices.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Extend a semimodular lattice to a geometric lattice of the same length.
    ExtendGeometric {
        input: PathBuf,
        /// Write the step log here as JSON lines.
        #[arg(long)]
        steps: Option<PathBuf>,
    },
    /// Extend a slim semimodular lattice to a slim rectangular lattice.
    ExtendRectangular {
        input: PathBuf,
        /// Write the step log here as JSON lines.
        #[arg(long)]
        steps: Option<PathBuf>,
    },
    /// All congruences of a lattice.
    Congruences { input: PathBuf },
    /// Whether an embedding is a congruence-preserving extension.
    VerifyCpe {
        /// The smaller lattice.
        source: PathBuf,
        /// The larger lattice.
        target: PathBuf,
        /// Image of each source element, space- or comma-separated.
        #[arg(long)]
        map: String,
    },
    /// Lattice → geometry → lattice, or geometry → lattice → geometry.
    Roundtrip { input: PathBuf },
    /// The chain-split defect of a slim semimodular lattice.
    Delta { input: PathBuf },
    /// Enumerate small lattices, or random closure systems on a poset.
    Enumerate {
        /// Largest lattice size.
        #[arg(long, env = "FAIGLE_MAX_ELEMENTS", default_value_t = 6)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Write one file per lattice into this directory.
        #[arg(long, conflicts_with = "output")]
        dir: Option<PathBuf>,
        /// Instead of lattices, emit random closure systems on this poset.
        #[arg(long)]
        closures: Option<PathBuf>,
        /// Number of closure systems.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Seed for random closure systems.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphviz diagram of a lattice or poset file.
    ExportDot { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    All,
    Semimodular,
    SlimSemimodular,
}

impl From<Filter> for LatticeFilter {
    fn from(f: Filter) -> Self {
        match f {
            Filter::All => LatticeFilter::All,
            Filter::Semimodular => LatticeFilter::Semimodular,
            Filter::SlimSemimodular => LatticeFilter::SlimSemimodular,
        }
    }
}

/// Everything that ends a run early.
enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(Error::InvariantViolation(_)) => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Domain(e) => e.kind(),
            Failure::Io(_) => "IoError",
            Failure::Usage(_) => "UsageError",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Domain(e) => e.to_string(),
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Run<()> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn indices(s: &str) -> Run<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::Usage(format!("expected an index, found {t:?}")))
        })
        .collect()
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn to_json_lines<T: serde::Serialize>(records: impl IntoIterator<Item = T>) -> String {
    records
        .into_iter()
        .map(|r| serde_json::to_string(&r).expect("serializable") + "\n")
        .collect()
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

fn run(cli: &Cli) -> Run<String> {
    let format = cli.format;
    let unsupported = |what: &str| Failure::Usage(format!("{what} has no such output format"));
    match &cli.command {
        Command::CheckAxioms { input } => {
            let g = parse_geometry(&read(input)?)?;
            let report = g.check_axioms();
            match format {
                Format::Json => Ok(to_json(&report)),
                Format::Text => Ok(json::axiom_report_text(&g, &report)),
                Format::Dot => Err(unsupported("check-axioms")),
            }
        }
        Command::Geom { input } => {
            let g = geom_of_lattice(&parse_lattice(&read(input)?)?)?;
            match format {
                Format::Text => Ok(write_geometry(&g)),
                Format::Json => Ok(to_json(&json::geometry(&g))),
                Format::Dot => Ok(poset_to_dot(g.ground(), "ground")),
            }
        }
        Command::Flats { input } => {
            let g = parse_geometry(&read(input)?)?.verify()?;
            let l = g.lattice_of_flats()?;
            match format {
                Format::Text => Ok(write_lattice(&l)),
                Format::Json => Ok(to_json(&json::lattice(&l))),
                Format::Dot => Ok(lattice_to_dot(&l, "flats")),
            }
        }
        Command::Closure { input, set } => {
            let g = parse_geometry(&read(input)?)?;
            let x: ElemSet = indices(set)?.into_iter().collect();
            if let Some(i) = x.iter().last() {
                if i >= g.ground().len() {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        size: g.ground().len(),
                    }
                    .into());
                }
            }
            let cl = g.closure(&x)?;
            match format {
                Format::Text => Ok(format!(
                    "{}\n",
                    cl.to_vec()
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )),
                Format::Json => Ok(to_json(&cl)),
                Format::Dot => Err(unsupported("closure")),
            }
        }
        Command::ExtendGeometric { input, steps } => {
            let l = parse_lattice(&read(input)?)?;
            let ext = extend_to_geometric(&l)?;
            let records: Vec<_> = ext.steps.iter().map(|s| s.record()).collect();
            if let Some(path) = steps {
                write_file(path, &to_json_lines(&records))?;
            }
            extension_output(format, &ext.lattice, &ext.embedding, &records)
        }
        Command::ExtendRectangular { input, steps } => {
            let l = parse_lattice(&read(input)?)?;
            let ext = extend_to_rectangular(&l)?;
            let records: Vec<_> = ext.steps.iter().map(|s| s.record()).collect();
            if let Some(path) = steps {
                write_file(path, &to_json_lines(&records))?;
            }
            extension_output(format, &ext.lattice, &ext.embedding, &records)
        }
        Command::Congruences { input } => {
            let l = parse_lattice(&read(input)?)?;
            let (con, list) = congruence_lattice(&l)?;
            match format {
                Format::Text => Ok(list.iter().map(write_congruence).collect()),
                Format::Json => Ok(to_json(&json::congruences(&list))),
                Format::Dot => Ok(lattice_to_dot(&con, "Con")),
            }
        }
        Command::VerifyCpe { source, target, map } => {
            let l = parse_lattice(&read(source)?)?;
            let k = parse_lattice(&read(target)?)?;
            let e = Embedding::new(l, k, indices(map)?)?;
            let verdict = is_congruence_preserving_extension(&e)?;
            match format {
                Format::Text => Ok(format!("{verdict}\n")),
                Format::Json => Ok(to_json(&serde_json::json!({ "congruence_preserving": verdict }))),
                Format::Dot => Err(unsupported("verify-cpe")),
            }
        }
        Command::Roundtrip { input } => {
            let text = read(input)?;
            let (kind, verdict) = if first_keyword(&text) == Some("geometry") {
                ("geometry", roundtrip_geometry(&parse_geometry(&text)?.verify()?)?)
            } else {
                ("lattice", roundtrip_lattice(&parse_lattice(&text)?)?)
            };
            match format {
                Format::Text => Ok(format!("{kind} roundtrip: {verdict}\n")),
                Format::Json => Ok(to_json(
                    &serde_json::json!({ "input": kind, "roundtrip": verdict }),
                )),
                Format::Dot => Err(unsupported("roundtrip")),
            }
        }
        Command::Delta { input } => {
            let l = parse_lattice(&read(input)?)?;
            let pair = delta(&l)?;
            let jir = l.jir_elements();
            let a: Vec<usize> = pair.a_chain.iter().map(|i| jir[i]).collect();
            let b: Vec<usize> = pair.b_chain.iter().map(|i| jir[i]).collect();
            match format {
                Format::Text => Ok(format!(
                    "delta {}\nchain-a {}\nchain-b {}\n",
                    pair.delta,
                    json::join(&a),
                    json::join(&b)
                )),
                Format::Json => Ok(to_json(
                    &serde_json::json!({ "delta": pair.delta, "a": a, "b": b }),
                )),
                Format::Dot => Err(unsupported("delta")),
            }
        }
        Command::Enumerate {
            max,
            filter,
            dir,
            closures,
            count,
            seed,
        } => {
            if let Some(poset) = closures {
                let p = parse_poset(&read(poset)?)?;
                let gs = random_closure_candidates(&p, *count, *seed);
                return match format {
                    Format::Text => Ok(gs.iter().map(write_geometry).collect()),
                    Format::Json => Ok(to_json_lines(gs.iter().map(json::geometry))),
                    Format::Dot => Err(unsupported("enumerate")),
                };
            }
            let cfg = EnumConfig {
                max_elements: *max,
                filter: (*filter).into(),
                seed: *seed,
            };
            let ls = enumerate_lattices(&cfg)?;
            let render = |l: &faigle::Lattice, i: usize| match format {
                Format::Text => Ok(write_lattice(l)),
                Format::Json => Ok(serde_json::to_string(&json::lattice(l)).expect("serializable") + "\n"),
                Format::Dot => Ok(lattice_to_dot(l, &format!("L{i}"))),
            };
            if let Some(dir) = dir {
                fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
                let ext = match format {
                    Format::Text => "txt",
                    Format::Json => "json",
                    Format::Dot => "dot",
                };
                for (i, l) in ls.iter().enumerate() {
                    let name = format!("lattice-{:02}-{i:05}.{ext}", l.len());
                    write_file(&dir.join(name), &render(l, i)?)?;
                }
                return Ok(format!("{} lattices written to {}\n", ls.len(), dir.display()));
            }
            ls.iter().enumerate().map(|(i, l)| render(l, i)).collect()
        }
        Command::ExportDot { input } => {
            let text = read(input)?;
            match first_keyword(&text) {
                Some("lattice") => Ok(lattice_to_dot(&parse_lattice(&text)?, "lattice")),
                Some("geometry") => {
                    let g = parse_geometry(&text)?.verify()?;
                    Ok(lattice_to_dot(&g.lattice_of_flats()?, "flats"))
                }
                _ => Ok(poset_to_dot(&parse_poset(&text)?, "poset")),
            }
        }
    }
}

fn extension_output<T: serde::Serialize>(
    format: Format,
    k: &faigle::Lattice,
    e: &Embedding,
    records: &[T],
) -> Run<String> {
    match format {
        Format::Text => {
            let mut out = write_lattice(k);
            out.push_str(&format!("# embedding {}\n", json::join(e.map())));
            for r in records {
                out.push_str(&format!(
                    "# step {}\n",
                    serde_json::to_string(r).expect("serializable")
                ));
            }
            Ok(out)
        }
        Format::Json => Ok(to_json(&serde_json::json!({
            "lattice": json::lattice(k),
            "embedding": e.map(),
            "steps": records,
        }))),
        Format::Dot => Ok(lattice_to_dot(k, "extension")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| match &cli.output {
        Some(path) => write_file(path, &out),
        None => io::stdout()
            .write_all(out.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if cli.error_json {
                let mut value = serde_json::json!({
                    "error": failure.kind(),
                    "message": failure.message(),
                });
                if let Failure::Domain(Error::Parse { line, .. }) = &failure {
                    value["line"] = (*line).into();
                }
                eprintln!("{value}");
            } else {
                eprintln!("error: {}", failure.message());
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(
            Failure::Domain(Error::InvariantViolation("x".into())).exit_code(),
            2
        );
        assert_eq!(Failure::Domain(Error::NotSemimodular).exit_code(), 1);
        assert_eq!(Failure::Io("x".into()).exit_code(), 1);
        assert_eq!(Failure::Usage("x".into()).exit_code(), 1);
        assert_eq!(
            Failure::Domain(Error::InvariantViolation("x".into())).kind(),
            "InvariantViolation"
        );
    }

    #[test]
    fn index_lists() {
        assert_eq!(indices("0, 1 3").ok(), Some(vec![0, 1, 3]));
        assert_eq!(indices("").ok(), Some(vec![]));
        assert!(indices("a").is_err());
    }

    #[test]
    fn header_detection() {
        assert_eq!(first_keyword("# c\n\ngeometry\nposet 1\n"), Some("geometry"));
        assert_eq!(first_keyword(""), None);
    }
}
