//! The `freegroup` command line.
//!
//! Exit codes: 0 success, 1 domain error (JSON report on stderr), 2 usage
//! error. Output is produced in full or not at all.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abelian::{abelianize, quotient_exists};
use crate::enumerate::{conjugacy_classes, enumerate_index, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::subgroup::{
    cyclic_cover, embed_in_f2, infinite_index_example, normal_subgroup_exists, subgroup_exists,
    Subgroup,
};
use crate::word::{default_name, parse_word, Alphabet, Word};

pub const CAP_ENV: &str = "FREEGROUP_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "freegroup",
    version,
    about = "Exact computation in finitely generated free groups"
)]
struct Cli {
    /// Rank of the ambient free group (default 2, or the size of --names).
    #[arg(short = 'n', long = "rank", global = true)]
    rank: Option<usize>,

    /// File of whitespace-separated generator names.
    #[arg(long, global = true)]
    names: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Enumeration cap on e·(e!)^(n−1); overrides FREEGROUP_ENUM_CAP.
    #[arg(long, global = true)]
    cap: Option<u64>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct SubgroupInput {
    /// Generators, one word per argument.
    generators: Vec<String>,

    /// Subgroup or graph JSON file instead of generators.
    #[arg(long, conflicts_with = "generators")]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Freely reduce a word.
    Reduce { word: Vec<String> },
    /// Seeded random reduced word.
    Random {
        #[arg(short = 'l', long)]
        length: usize,
    },
    /// Exponent-sum vector of a word.
    Abelianize { word: Vec<String> },
    /// Report on the subgroup generated by the given words.
    Subgroup(SubgroupInput),
    /// Membership of a word in a subgroup.
    Member {
        #[command(flatten)]
        subgroup: SubgroupInput,
        #[arg(short = 'w', long)]
        word: String,
    },
    /// All subgroups of a given index.
    Enumerate {
        #[arg(short = 'e', long)]
        index: usize,
    },
    /// Conjugacy classes of the subgroups of a given index.
    Classes {
        #[arg(short = 'e', long)]
        index: usize,
    },
    /// Normality test.
    Normal(SubgroupInput),
    /// Conjugate a subgroup by a word.
    Conjugate {
        #[command(flatten)]
        subgroup: SubgroupInput,
        #[arg(long)]
        by: String,
    },
    /// Standard subgroup constructions.
    #[command(subcommand)]
    Construct(Construction),
    /// Existence criteria for free subgroups, normal subgroups and quotients.
    Exists {
        #[arg(value_enum)]
        kind: ExistsKind,
        /// Rank of the group being asked about.
        #[arg(short = 'm', long, allow_negative_numbers = true)]
        ambient: i64,
        /// Rank of the sought subgroup or quotient.
        #[arg(short = 't', long, visible_aliases = ["sub", "quotient"], allow_negative_numbers = true)]
        target: i64,
    },
    /// Graph of a subgroup as DOT (default) or JSON.
    Export(SubgroupInput),
}

#[derive(Debug, Subcommand)]
enum Construction {
    /// Kernel of F_n → ℤ/k through the last generator.
    CyclicCover {
        #[arg(short = 'k', long)]
        sheets: usize,
    },
    /// A rank-m subgroup of F₂.
    EmbedF2 {
        #[arg(short = 'm', long)]
        rank: usize,
    },
    /// ⟨bⁱ a b⁻ⁱ : i < r⟩ in F₂.
    InfiniteExample {
        #[arg(short = 'r', long)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExistsKind {
    Subgroup,
    Normal,
    Quotient,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(mut stdout) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Output {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(e)) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("{}\n", json!({"error": e.kind(), "message": e.to_string()})),
        },
    }
}

fn alphabet(cli: &Cli) -> Result<Alphabet> {
    match &cli.names {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            let alphabet = Alphabet::new(text.split_whitespace())?;
            if let Some(n) = cli.rank.filter(|&n| n != alphabet.rank()) {
                return Err(Error::InvalidAlphabet(format!(
                    "--rank {n} disagrees with {} names in {}",
                    alphabet.rank(),
                    path.display()
                )));
            }
            Ok(alphabet)
        }
        None => Alphabet::standard(cli.rank.unwrap_or(2)),
    }
}

fn enum_cap(cli: &Cli) -> Result<u64> {
    if let Some(cap) = cli.cap {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("{CAP_ENV}={v:?} is not a non-negative integer"))
        }),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn check_format(cli: &Cli) -> std::result::Result<(), Failure> {
    let graph_verb = matches!(
        cli.verb,
        Verb::Subgroup(_) | Verb::Conjugate { .. } | Verb::Construct(_) | Verb::Export(_)
    );
    if cli.format == Format::Dot && !graph_verb {
        return Err(Failure::Usage(
            "--format dot is only valid for verbs that produce a graph".into(),
        ));
    }
    Ok(())
}

fn load_subgroup(input: &SubgroupInput, alphabet: &Alphabet) -> Result<Subgroup> {
    match &input.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            let value: Value = serde_json::from_str(&text)?;
            if value.get("graph").is_some() {
                Subgroup::from_json(&value, alphabet)
            } else {
                let graph = LabeledGraph::from_json(&value)?;
                if graph.ambient_rank() != alphabet.rank() {
                    return Err(Error::RankMismatch {
                        expected: alphabet.rank(),
                        found: graph.ambient_rank(),
                    });
                }
                Ok(Subgroup::from_graph(&graph))
            }
        }
        None => {
            let words = input
                .generators
                .iter()
                .map(|s| parse_word(s, alphabet))
                .collect::<Result<Vec<_>>>()?;
            Subgroup::generated_by(alphabet.rank(), &words)
        }
    }
}

fn non_negative(x: i64, what: &str) -> Result<usize> {
    usize::try_from(x)
        .map_err(|_| Error::InvalidArgument(format!("{what} must be non-negative, got {x}")))
}

fn join_basis(s: &Subgroup, alphabet: &Alphabet) -> String {
    if s.basis().is_empty() {
        return "(empty)".into();
    }
    s.basis()
        .iter()
        .map(|b| b.to_string_with(alphabet))
        .collect::<Vec<_>>()
        .join(", ")
}

fn report(s: &Subgroup, alphabet: &Alphabet, format: Format) -> String {
    match format {
        Format::Json => s.to_json(alphabet).to_string(),
        Format::Dot => s.graph().to_dot(alphabet),
        Format::Text => format!(
            "basis: {}\nindex: {}\nrank: {}\nnormal: {}\n",
            join_basis(s, alphabet),
            s.index(),
            s.rank(),
            s.is_normal()
        ),
    }
}

fn word_out(w: &Word, alphabet: &Alphabet, format: Format) -> String {
    match format {
        Format::Json => w.to_json(alphabet).to_string(),
        _ => w.to_string_with(alphabet),
    }
}

fn flag(value: bool, key: &str, format: Format) -> String {
    match format {
        Format::Json => json!({ key: value }).to_string(),
        _ => value.to_string(),
    }
}

fn execute(cli: &Cli) -> std::result::Result<String, Failure> {
    check_format(cli)?;
    let format = cli.format;
    // The existence criteria never touch an alphabet.
    if let Verb::Exists {
        kind,
        ambient,
        target,
    } = cli.verb
    {
        let (m, n) = (
            non_negative(ambient, "--ambient")?,
            non_negative(target, "--target")?,
        );
        let answer = match kind {
            ExistsKind::Subgroup => subgroup_exists(m, n),
            ExistsKind::Normal => normal_subgroup_exists(m, n),
            ExistsKind::Quotient => quotient_exists(m, n),
        };
        let kind = match kind {
            ExistsKind::Subgroup => "subgroup",
            ExistsKind::Normal => "normal",
            ExistsKind::Quotient => "quotient",
        };
        return Ok(match format {
            Format::Json => {
                json!({"kind": kind, "ambient": m, "target": n, "exists": answer}).to_string()
            }
            _ => answer.to_string(),
        });
    }

    let alphabet = alphabet(cli)?;
    let rank = alphabet.rank();
    let out = match &cli.verb {
        Verb::Reduce { word } => {
            word_out(&parse_word(&word.join(" "), &alphabet)?, &alphabet, format)
        }
        Verb::Random { length } => {
            word_out(&Word::random(*length, rank, cli.seed)?, &alphabet, format)
        }
        Verb::Abelianize { word } => {
            let v = abelianize(&parse_word(&word.join(" "), &alphabet)?);
            match format {
                Format::Json => Value::from(v.0).to_string(),
                _ => v.to_string(),
            }
        }
        Verb::Subgroup(input) => report(&load_subgroup(input, &alphabet)?, &alphabet, format),
        Verb::Member { subgroup, word } => {
            let s = load_subgroup(subgroup, &alphabet)?;
            flag(s.contains(&parse_word(word, &alphabet)?)?, "member", format)
        }
        Verb::Normal(input) => {
            let s = load_subgroup(input, &alphabet)?;
            match format {
                Format::Json => json!({
                    "normal": s.is_normal(),
                    "byRebase": s.normal_by_rebase(),
                    "byConjugation": s.normal_by_conjugation(),
                })
                .to_string(),
                _ => s.is_normal().to_string(),
            }
        }
        Verb::Conjugate { subgroup, by } => {
            let s = load_subgroup(subgroup, &alphabet)?;
            report(
                &s.conjugate(&parse_word(by, &alphabet)?)?,
                &alphabet,
                format,
            )
        }
        Verb::Enumerate { index } => {
            let subs = enumerate_index(rank, *index, enum_cap(cli)?)?;
            let classes = conjugacy_classes(&subs);
            let normal = subs.iter().filter(|s| s.is_normal()).count();
            match format {
                Format::Json => json!({
                    "ambientRank": rank,
                    "index": index,
                    "count": subs.len(),
                    "classCount": classes.len(),
                    "normalCount": normal,
                    "classes": classes,
                    "subgroups": subs.iter().map(|s| s.to_json(&alphabet)).collect::<Vec<_>>(),
                })
                .to_string(),
                _ => {
                    let mut class_of = vec![0; subs.len()];
                    for (c, members) in classes.iter().enumerate() {
                        for &i in members {
                            class_of[i] = c;
                        }
                    }
                    let mut text = format!(
                        "subgroups: {}\nclasses: {}\nnormal: {}\n",
                        subs.len(),
                        classes.len(),
                        normal
                    );
                    for (i, s) in subs.iter().enumerate() {
                        text.push_str(&format!(
                            "{i}: class {} rank {} normal {} basis {}\n",
                            class_of[i],
                            s.rank(),
                            s.is_normal(),
                            join_basis(s, &alphabet)
                        ));
                    }
                    text
                }
            }
        }
        Verb::Classes { index } => {
            let subs = enumerate_index(rank, *index, enum_cap(cli)?)?;
            let classes = conjugacy_classes(&subs);
            match format {
                Format::Json => json!({
                    "ambientRank": rank,
                    "index": index,
                    "classCount": classes.len(),
                    "classes": classes
                        .iter()
                        .map(|c| c.iter().map(|&i| subs[i].to_json(&alphabet)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
                .to_string(),
                _ => {
                    let mut text = format!("classes: {}\n", classes.len());
                    for (c, members) in classes.iter().enumerate() {
                        let rep = &subs[members[0]];
                        text.push_str(&format!(
                            "{c}: size {} normal {} representative {}\n",
                            members.len(),
                            rep.is_normal(),
                            join_basis(rep, &alphabet)
                        ));
                    }
                    text
                }
            }
        }
        Verb::Construct(c) => {
            let (s, note) = match c {
                Construction::CyclicCover { sheets } => (
                    cyclic_cover(rank, *sheets)?,
                    // rank ≥ 1 is checked by cyclic_cover.
                    Some(format!("cycle: {}\n", alphabet.name(rank - 1))),
                ),
                Construction::EmbedF2 { rank: m } => (embed_in_f2(*m)?, None),
                Construction::InfiniteExample { count } => (infinite_index_example(*count)?, None),
            };
            let s_alphabet = if s.ambient_rank() == rank {
                alphabet.clone()
            } else {
                Alphabet::new((0..s.ambient_rank()).map(default_name))?
            };
            let mut text = report(&s, &s_alphabet, format);
            if let (Format::Text, Some(note)) = (format, note) {
                text.push_str(&note);
            }
            text
        }
        Verb::Export(input) => {
            let s = load_subgroup(input, &alphabet)?;
            match format {
                Format::Json => s.graph().to_json().to_string(),
                _ => s.graph().to_dot(&alphabet),
            }
        }
        Verb::Exists { .. } => unreachable!("handled above"),
    };
    Ok(out)
}
