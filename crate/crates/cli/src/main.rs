//! `clopen`: batch front end over clopen-core.
//!
//! Exit codes: 0 when the property holds or the command succeeded, 1 when
//! it fails (a certificate is printed), 2 on usage, input or budget errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use clopen_core::lang::oracle::DEFAULT_ENUMERATION_BUDGET;
use clopen_core::{
    check_nfa_closed, check_property, connected_components, distinguish_open, interior, parse_automaton, parse_expr,
    run_law_suite, separate_clopen, separate_open, separate_open_pair, Alphabet, Bounds, ClosureKind, Contains,
    FailureReason, LangExpr, MembershipTable, OracleProperty, ParsedAutomaton, Property, Source, Suite, Verdict,
    WitnessKind, WitnessSpec, Word, DEFAULT_BUDGET,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] clopen_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "clopen", version, about = "Closed, open and clopen regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a closure property of an automaton read from a `.aut` file.
    Check {
        input: PathBuf,
        /// pos-closed, kleene-closed, pos-open, kleene-open, clopen-pos or clopen-kleene.
        #[arg(long, default_value = "pos-closed")]
        property: Property,
        /// Check positive closedness on the NFA directly instead of
        /// determinizing first. Other properties still determinize.
        #[arg(long)]
        nfa: bool,
        /// Cap on subset-construction states or NFA configurations.
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = at_least_one)]
        budget: usize,
    },
    /// Separate two words by a clopen language, an open finite set, or a
    /// pair of disjoint open sets.
    Separate {
        u: String,
        v: String,
        #[arg(long, value_enum, default_value_t = Mode::Clopen)]
        mode: Mode,
        /// Symbols in order, separated by spaces or commas. Defaults to the
        /// symbols of u then v in order of first appearance.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Group the words of a word-list file by primitive root.
    Components {
        input: PathBuf,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Write the automaton of the quadratic counterexample family.
    Witness {
        #[arg(value_parser = at_least_one)]
        n: usize,
        /// m (the language) or mprime (its complement).
        #[arg(long, default_value = "m")]
        which: WitnessKind,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded closed/open check of a `.lang` expression, by enumerating all
    /// words up to --max-len.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        check: OracleProperty,
        #[arg(long, default_value_t = 10, value_parser = at_least_one)]
        max_len: usize,
        /// Cap on the number of enumerated words.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET, value_parser = at_least_one)]
        budget: usize,
    },
    /// Run randomized law suites and print their reports.
    Laws {
        /// A suite id such as T1a, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200, value_parser = at_least_one)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw cap per suite; 50 per trial when omitted.
        #[arg(long, value_parser = at_least_one)]
        max_draws: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = at_least_one)]
        budget: usize,
    },
    /// Write the interior (complement of the closure of the complement).
    Interior {
        input: PathBuf,
        #[arg(long, default_value = "positive")]
        kind: ClosureKind,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = at_least_one)]
        budget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Clopen,
    Open,
    Distinguish,
    Pair,
}

fn at_least_one(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_or_print(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_alphabet(text: &str) -> CliResult<Alphabet> {
    Ok(Alphabet::parse(&text.replace(',', " "))?)
}

fn alphabet_for(given: Option<&str>, words: &[Word]) -> CliResult<Alphabet> {
    let alphabet = match given {
        Some(text) => parse_alphabet(text)?,
        None => Alphabet::infer(words),
    };
    for w in words {
        alphabet.encode(w)?;
    }
    Ok(alphabet)
}

fn word_set(words: &[Word]) -> String {
    let parts: Vec<String> = words.iter().map(Word::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn print_verdict(v: &Verdict) -> ExitCode {
    if v.holds {
        println!("OK");
        return ExitCode::SUCCESS;
    }
    match &v.certificate {
        Some(c) => println!("FAIL {c}"),
        None => println!("FAIL"),
    }
    match v.reason {
        Some(FailureReason::NotClosed) | None => {}
        Some(FailureReason::NotOpen) => println!("reason: not-open (u and v outside, uv inside)"),
        Some(r) => println!("reason: {}", r.name()),
    }
    ExitCode::from(1)
}

fn cmd_check(input: &Path, property: Property, nfa: bool, budget: usize) -> CliResult<ExitCode> {
    let parsed = parse_automaton(&read(input)?)?;
    let verdict = match parsed {
        ParsedAutomaton::Dfa(d) if !nfa => check_property(&d, property),
        other => {
            let a = other.into_nfa();
            if nfa && property == Property::PositiveClosed {
                check_nfa_closed(&a, budget)?
            } else {
                check_property(&a.determinize(budget)?, property)
            }
        }
    };
    Ok(print_verdict(&verdict))
}

fn cmd_separate(u: &str, v: &str, mode: Mode, alphabet: Option<&str>) -> CliResult<ExitCode> {
    let (u, v) = (Word::parse(u)?, Word::parse(v)?);
    let alphabet = alphabet_for(alphabet, &[u.clone(), v.clone()])?;
    let result = match mode {
        Mode::Clopen => separate_clopen(&u, &v, &alphabet).map(|s| format!("{}\n{}", s.expr, s.trace)),
        Mode::Open => separate_open(&u, &v, &alphabet).map(|ws| format!("{}\n", word_set(&ws))),
        Mode::Distinguish => distinguish_open(&u, &v, &alphabet).map(|(ws, which)| {
            let which = match which {
                Contains::U => "u",
                Contains::V => "v",
            };
            format!("{}\ncontains {which}\n", word_set(&ws))
        }),
        Mode::Pair => {
            separate_open_pair(&u, &v, &alphabet).map(|(l, m)| format!("L = {}\nM = {}\n", word_set(&l), word_set(&m)))
        }
    };
    match result {
        Ok(text) => {
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ clopen_core::Error::Commute { .. }) => {
            println!("COMMUTE");
            println!("{e}");
            Ok(ExitCode::from(1))
        }
        Err(e @ clopen_core::Error::Power { .. }) => {
            println!("POWER");
            println!("{e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

/// Non-empty lines without `#` comments.
fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn cmd_components(input: &Path, alphabet: Option<&str>) -> CliResult<ExitCode> {
    let words = content_lines(&read(input)?)
        .map(Word::parse)
        .collect::<Result<Vec<_>, _>>()?;
    let alphabet = alphabet_for(alphabet, &words)?;
    for group in connected_components(&words, &alphabet)? {
        let parts: Vec<String> = group.iter().map(Word::to_string).collect();
        println!("{}", parts.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

/// A `.lang` file: an optional `alphabet:` line, then the expression.
/// Without the header the alphabet is the expression's base symbols.
fn read_lang(path: &Path) -> CliResult<(LangExpr, Alphabet)> {
    let text = read(path)?;
    let mut alphabet = None;
    let mut body = String::new();
    for line in content_lines(&text) {
        match line.strip_prefix("alphabet:") {
            Some(rest) if alphabet.is_none() && body.is_empty() => alphabet = Some(parse_alphabet(rest)?),
            _ => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let expr = parse_expr(&body)?;
    let alphabet = match alphabet {
        Some(a) => a,
        None => Alphabet::new(expr.base_symbols())?,
    };
    if alphabet.is_empty() {
        return Err(CliError::Usage(format!("{}: no alphabet", path.display())));
    }
    expr.validate(&alphabet)?;
    Ok((expr, alphabet))
}

fn cmd_oracle(input: &Path, check: OracleProperty, max_len: usize, budget: usize) -> CliResult<ExitCode> {
    let (expr, alphabet) = read_lang(input)?;
    let table = MembershipTable::build(&Source::Expr(&expr, &alphabet), max_len, budget)?;
    let verdict = table.check(check);
    println!("{verdict}");
    Ok(if verdict.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_laws(suite: &str, trials: usize, seed: u64, bounds: Bounds) -> CliResult<ExitCode> {
    let suites: Vec<Suite> = if suite.eq_ignore_ascii_case("all") {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let mut clean = true;
    for s in suites {
        let report = run_law_suite(s, trials, seed, bounds)?;
        clean &= report.passed();
        print!("{report}");
    }
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_interior(input: &Path, kind: ClosureKind, out: Option<&Path>, budget: usize) -> CliResult<ExitCode> {
    let d = match parse_automaton(&read(input)?)? {
        ParsedAutomaton::Dfa(d) => d,
        ParsedAutomaton::Nfa(n) => n.determinize(budget)?,
    };
    write_or_print(out, &interior(&d, kind, budget)?.to_aut())?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Check {
            input,
            property,
            nfa,
            budget,
        } => cmd_check(&input, property, nfa, budget),
        Command::Separate { u, v, mode, alphabet } => cmd_separate(&u, &v, mode, alphabet.as_deref()),
        Command::Components { input, alphabet } => cmd_components(&input, alphabet.as_deref()),
        Command::Witness { n, which, out } => {
            let d = clopen_core::witness_automaton(WitnessSpec { n, which })?;
            write_or_print(out.as_deref(), &d.to_aut())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            input,
            check,
            max_len,
            budget,
        } => cmd_oracle(&input, check, max_len, budget),
        Command::Laws {
            suite,
            trials,
            seed,
            max_draws,
            budget,
        } => cmd_laws(&suite, trials, seed, Bounds { budget, max_draws }),
        Command::Interior {
            input,
            kind,
            out,
            budget,
        } => cmd_interior(&input, kind, out.as_deref(), budget),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
