mod report;
mod specs;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use markedgroups::engine::Budget;
use markedgroups::gadgets::{co_re_gadget, freeze_gadget, lockhart_wp_gadget, quotient_algo_gadget, quotient_pair, trivial_or_z2};
use markedgroups::oracles::{perm_wp, sigma_witness, CayleyTable};
use markedgroups::presentations::{consequences, re_from_enumerator, variety_consequences, FinitePresentation, RelatorEnumerator};
use markedgroups::quotients::{
    extract_in_variety, extract_presentation, fp_quotient, fp_wpi_quotient, lamplighter_finite_quotient, pickel_separator,
    Side,
};
use markedgroups::recognition::{abstract_iso, kuznetsov_wp, marked_iso, mckinsey_search};
use markedgroups::words::{format_word, Word};

use report::{Report, Verdict};
use specs::{Failure, Res};

#[derive(Parser)]
#[command(name = "mgroups", version, about = "Marked group computations run under step budgets")]
struct Cli {
    /// Step budget; required by every command except `witness`.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Enumeration order of every search; only `fixed` exists.
    #[arg(long, global = true, value_enum, default_value_t = SeedOrder::Fixed)]
    seed_order: SeedOrder,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedOrder {
    Fixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuotientKind {
    Fp,
    Wpi,
    Lamplighter,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    TrivialOrZ2,
    QuotientPair,
    CoRe,
    QuotientAlgo,
    Lockhart,
    Freeze,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word is trivial under a word problem solver.
    Wp {
        /// cyclic:N, abelian:K[:rows], lamplighter, perm:P;P, table:PATH:i,j,
        /// lockhart:MACHINE, mckinsey:PRES or kuznetsov:PRES.
        oracle: String,
        word: String,
    },
    /// Query or list the consequences of a presentation.
    Consequences {
        presentation: String,
        #[arg(long, conflicts_with = "emit")]
        word: Option<String>,
        #[arg(long)]
        emit: Option<usize>,
        /// Laws separated by ';', e.g. "[a,b]".
        #[arg(long)]
        laws: Option<String>,
    },
    /// Run a quotient algorithm on a candidate.
    Quotient {
        #[arg(long, value_enum)]
        kind: QuotientKind,
        /// The group whose quotients are tested (fp and wpi).
        #[arg(long)]
        presentation: Option<String>,
        /// A presentation for fp, an oracle for wpi and lamplighter.
        #[arg(long)]
        candidate: String,
    },
    /// Extract a finite presentation from a relator stream and a quotient algorithm.
    Extract {
        /// Leading relators of the stream; the consequences of the target follow.
        #[arg(long)]
        relators: String,
        /// Presentation whose quotient algorithm is used.
        #[arg(long)]
        target: String,
        /// Extract relative to these laws (separated by ';').
        #[arg(long)]
        laws: Option<String>,
    },
    /// Semi-decide whether two presentations define the same group.
    Iso {
        /// Same marked group (the default).
        #[arg(long, conflicts_with = "abstract_")]
        marked: bool,
        /// Isomorphic as abstract groups.
        #[arg(long = "abstract")]
        abstract_: bool,
        first: String,
        second: String,
    },
    /// Search for a finite quotient in which a word is non-trivial.
    Mckinsey { presentation: String, word: String },
    /// Word problem of a simple group from its presentation.
    Kuznetsov { presentation: String, word: String },
    /// Search for a finite group that is a quotient of exactly one of two groups.
    Pickel {
        first: String,
        second: String,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
    /// Build a machine-parametrized gadget and probe it.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        /// A fleet machine name or a machine file.
        #[arg(long)]
        machine: String,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        presentation: Option<String>,
        /// Extra relators for quotient-pair.
        #[arg(long)]
        extra: Option<String>,
        /// Candidate presentation for quotient-algo.
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Print the permutation witness and check its relations.
    Witness {
        #[arg(long = "N", visible_alias = "n")]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => println!("{}", report.render_text()),
            }
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}

fn budget(cli: &Cli) -> Res<u64> {
    cli.budget.ok_or_else(|| Failure::Usage("--budget is required for this command".into()))
}

fn words_json(ws: &[Word]) -> Value {
    Value::from(ws.iter().map(format_word).collect::<Vec<_>>())
}

fn braces(ws: &[Word]) -> String {
    format!("{{{}}}", ws.iter().map(format_word).collect::<Vec<_>>().join(", "))
}

fn table_json(t: &CayleyTable, marking: &[usize]) -> Value {
    json!({ "order": t.order(), "rows": t.rows(), "marking": marking })
}

fn need<'a>(value: &'a Option<String>, flag: &str) -> Res<&'a str> {
    value.as_deref().ok_or_else(|| Failure::Usage(format!("{flag} is required here")))
}

fn run(cli: &Cli) -> Res<Report> {
    match &cli.command {
        Command::Wp { oracle, word } => {
            let b = budget(cli)?;
            let wp = specs::oracle(oracle)?;
            let w = specs::word(word, wp.arity())?;
            let out = wp.run(&w, Budget::new(b))?;
            let r = Report::new("wp", json!({ "oracle": oracle, "word": word }), Some(b)).decided(&out);
            Ok(r)
        }
        Command::Consequences { presentation, word, emit, laws } => {
            let b = budget(cli)?;
            let p = specs::presentation(presentation)?;
            let d = match laws {
                Some(l) => variety_consequences(&p, &specs::laws(l)?),
                None => consequences(&p),
            };
            let inputs = json!({ "presentation": presentation, "word": word, "emit": emit, "laws": laws });
            match (word, emit) {
                (Some(w), _) => {
                    let w = specs::word(w, p.arity())?;
                    let out = d.accepts(&w)?.run(Budget::new(b))?;
                    Ok(Report::new("consequences", inputs, Some(b)).semi(&out, |_| Value::Null))
                }
                (None, Some(n)) => {
                    let mut stream = d.enumerate();
                    let got = stream.take(*n, Budget::new(b));
                    let mut r = Report::new("consequences", inputs, Some(b));
                    r.steps_used = stream.steps_taken();
                    r.certificate = words_json(&got);
                    if got.len() == *n {
                        r.outcome = Verdict::Accepted;
                    }
                    Ok(r.summary(braces(&got)))
                }
                (None, None) => Err(Failure::Usage("give --word or --emit".into())),
            }
        }
        Command::Quotient { kind, presentation, candidate } => {
            let b = budget(cli)?;
            let inputs = json!({ "presentation": presentation, "candidate": candidate });
            match kind {
                QuotientKind::Fp => {
                    let p = specs::presentation(need(presentation, "--presentation")?)?;
                    let c = specs::presentation(candidate)?;
                    let out = fp_quotient(&p).test_same(&consequences(&c))?.run(Budget::new(b))?;
                    Ok(Report::new("quotient", inputs, Some(b)).semi(&out, |_| Value::Null))
                }
                QuotientKind::Wpi => {
                    let p = specs::presentation(need(presentation, "--presentation")?)?;
                    let c = specs::oracle(candidate)?;
                    let out = fp_wpi_quotient(&p).decide_same(&c)?.run(Budget::new(b))?;
                    Ok(Report::new("quotient", inputs, Some(b)).decided(&out))
                }
                QuotientKind::Lamplighter => {
                    let c = specs::oracle(candidate)?;
                    let out = lamplighter_finite_quotient().decide_same(&c)?.run(Budget::new(b))?;
                    Ok(Report::new("quotient", inputs, Some(b)).decided(&out))
                }
            }
        }
        Command::Extract { relators, target, laws } => {
            let b = budget(cli)?;
            let t = specs::presentation(target)?;
            let lead = specs::word_list(relators, t.arity())?;
            let inputs = json!({ "relators": relators, "target": target, "laws": laws });
            let mut c = match laws {
                Some(l) => {
                    let laws = specs::laws(l)?;
                    let tail = variety_consequences(&t, &laws);
                    let rel = RelatorEnumerator::new(t.arity(), move || tail.enumerate()).preceded_by(lead);
                    extract_in_variety(&rel, &fp_quotient(&t), &laws)?
                }
                None => {
                    let tail = consequences(&t);
                    let rel = RelatorEnumerator::new(t.arity(), move || tail.enumerate()).preceded_by(lead);
                    extract_presentation(&rel, &fp_quotient(&t))?
                }
            };
            let out = c.run(Budget::new(b))?;
            let text = out.value().map(|p: &FinitePresentation| braces(p.relators())).unwrap_or_default();
            Ok(Report::new("extract", inputs, Some(b))
                .semi(&out, |p| words_json(p.relators()))
                .summary(text))
        }
        Command::Iso { marked: _, abstract_, first, second } => {
            let b = budget(cli)?;
            let p1 = specs::presentation(first)?;
            let p2 = specs::presentation(second)?;
            let inputs = json!({ "mode": if *abstract_ { "abstract" } else { "marked" }, "first": first, "second": second });
            if *abstract_ {
                let out = abstract_iso(&p1, &p2).run(Budget::new(b))?;
                Ok(Report::new("iso", inputs, Some(b)).semi(&out, |w| {
                    json!({ "forward": words_json(&w.forward), "backward": words_json(&w.backward) })
                }))
            } else {
                let out = marked_iso(&p1, &p2)?.run(Budget::new(b))?;
                Ok(Report::new("iso", inputs, Some(b)).semi(&out, |_| Value::Null))
            }
        }
        Command::Mckinsey { presentation, word } => {
            let b = budget(cli)?;
            let p = specs::presentation(presentation)?;
            let w = specs::word(word, p.arity())?;
            let out = mckinsey_search(&p, &w)?.run(Budget::new(b))?;
            let text = out
                .value()
                .map(|c| format!("non-trivial in a quotient of order {}", c.table.order()))
                .unwrap_or_default();
            Ok(Report::new("mckinsey", json!({ "presentation": presentation, "word": word }), Some(b))
                .semi(&out, |c| {
                    let mut v = table_json(&c.table, &c.marking);
                    v["table_index"] = json!(c.table_index);
                    v
                })
                .summary(text))
        }
        Command::Kuznetsov { presentation, word } => {
            let b = budget(cli)?;
            let p = specs::presentation(presentation)?;
            let w = specs::word(word, p.arity())?;
            let out = kuznetsov_wp(&p.relator_enumerator()).run(&w, Budget::new(b))?;
            Ok(Report::new("kuznetsov", json!({ "presentation": presentation, "word": word }), Some(b)).decided(&out))
        }
        Command::Pickel { first, second, max_order } => {
            let b = budget(cli)?;
            let g = fp_wpi_quotient(&specs::presentation(first)?);
            let h = fp_wpi_quotient(&specs::presentation(second)?);
            let out = pickel_separator(&g, &h, *max_order)?.run(Budget::new(b))?;
            let text = out
                .value()
                .map(|s| format!("separated by a group of order {}", s.table.order()))
                .unwrap_or_default();
            Ok(Report::new("pickel", json!({ "first": first, "second": second, "max_order": max_order }), Some(b))
                .semi(&out, |s| {
                    let mut v = table_json(&s.table, &s.marking);
                    v["quotient_of"] = json!(if s.side == Side::First { "first" } else { "second" });
                    v
                })
                .summary(text))
        }
        Command::Gadget { kind, machine, word, presentation, extra, candidate } => {
            let b = budget(cli)?;
            let m = specs::machine(machine)?;
            let inputs = json!({
                "machine": machine, "word": word, "presentation": presentation, "extra": extra, "candidate": candidate,
            });
            let inputs = with_kind(inputs, *kind);
            let budget = Budget::new(b);
            let report = Report::new("gadget", inputs, Some(b));
            match kind {
                GadgetKind::TrivialOrZ2 => {
                    let w = specs::word(need(word, "--word")?, 1)?;
                    let out = re_from_enumerator(&trivial_or_z2(&m)).accepts(&w)?.run(budget)?;
                    Ok(report.semi(&out, |_| Value::Null))
                }
                GadgetKind::QuotientPair => {
                    let g = specs::presentation(need(presentation, "--presentation")?)?;
                    let extra = specs::word_list(need(extra, "--extra")?, g.arity())?;
                    let w = specs::word(need(word, "--word")?, g.arity())?;
                    let out = re_from_enumerator(&quotient_pair(&m, &g, &extra)?).accepts(&w)?.run(budget)?;
                    Ok(report.semi(&out, |_| Value::Null))
                }
                GadgetKind::CoRe => {
                    let w = specs::word(need(word, "--word")?, 1)?;
                    let out = co_re_gadget(&m).rejects(&w)?.run(budget)?;
                    Ok(report.semi(&out, |_| Value::Null))
                }
                GadgetKind::QuotientAlgo => {
                    let c = specs::presentation(need(candidate, "--candidate")?)?;
                    let out = quotient_algo_gadget(&m).test_same(&consequences(&c))?.run(budget)?;
                    Ok(report.semi(&out, |_| Value::Null))
                }
                GadgetKind::Lockhart => {
                    let w = specs::word(need(word, "--word")?, 1)?;
                    let out = lockhart_wp_gadget(&m).run(&w, budget)?;
                    Ok(report.decided(&out))
                }
                GadgetKind::Freeze => {
                    let p = specs::presentation(need(presentation, "--presentation")?)?;
                    let w = specs::word(need(word, "--word")?, p.arity())?;
                    let frozen = freeze_gadget(&m, &p.relator_enumerator());
                    let out = re_from_enumerator(&frozen).accepts(&w)?.run(budget)?;
                    Ok(report.semi(&out, |_| Value::Null))
                }
            }
        }
        Command::Witness { n } => witness(*n),
    }
}

fn with_kind(mut inputs: Value, kind: GadgetKind) -> Value {
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    inputs["kind"] = json!(name);
    inputs
}

/// Checks `σ₁² = 1`, `[σ₁, σ₀⁻ⁿσ₁σ₀ⁿ] = 1` for `1 ≤ n ≤ N` and that the
/// commutator at `n = N + 1` is non-trivial.
fn witness(n: usize) -> Res<Report> {
    let (s0, s1) = sigma_witness(n)?;
    let wp = perm_wp(&[s0.clone(), s1.clone()])?;
    let a = Word::generator(2, 1)?;
    let b = Word::generator(2, 2)?;
    let holds = |w: &Word| -> Res<bool> {
        let out = wp.run(w, Budget::new(u64::MAX))?;
        Ok(out.into_value().expect("permutation evaluation always answers"))
    };
    let commutes = |m: usize| -> Res<bool> {
        let conj = b.conjugate_by(&a.pow(m as i64))?;
        holds(&Word::commutator(&b, &conj)?)
    };
    let square = holds(&b.pow(2))?;
    let low = (1..=n).map(commutes).collect::<Res<Vec<_>>>()?;
    let fails_next = !commutes(n + 1)?;
    let ok = square && low.iter().all(|&x| x) && fails_next;
    let mut r = Report::new("witness", json!({ "N": n }), None);
    r.outcome = if ok { Verdict::Yes } else { Verdict::No };
    r.certificate = json!({
        "sigma0": s0.to_string(),
        "sigma1": s1.to_string(),
        "square_is_identity": square,
        "commutes_up_to_N": low,
        "fails_at_N_plus_1": fails_next,
    });
    let summary = format!(
        "sigma0 = {s0}\nsigma1 = {s1}\nsigma1^2 = id: {square}\ncommutators trivial for n = 1..{n}: {low:?}\nnon-trivial at n = {}: {fails_next}",
        n + 1
    );
    Ok(r.summary(summary))
}
