use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clusterkit::export::{to_dot, to_latex};
use clusterkit::io::{fixture_path, load_cartan, read_seed, seed_to_json};
use clusterkit::lie::{flipped_label, minor_labels, verify_seed};
use clusterkit::quantize::{solve_lambda, CompatibilityProblem, LambdaSolution};
use clusterkit::tower::{build_interval_tower, check_good_subseed, stable_compute, Query, TowerRule};
use clusterkit::triangular::{kl_correct, InitialFamily};
use clusterkit::word::{build_ddot_seed, build_dot_seed, sigma_sequence, CartanData, SignedWord};
use clusterkit::{Error, ExpVec, Seed};

#[derive(Parser)]
#[command(name = "clusterkit", version, about = "Exact computations with (quantum) cluster seeds")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice (sampled matrices).
    #[arg(long, global = true, default_value_t = 0)]
    rng_seed: u64,
    /// Worker threads for verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect or reshape a seed file.
    #[command(subcommand)]
    Seed(SeedCmd),
    /// Seeds from signed words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Mutate a seed at the given vertices, left to right.
    Mutate {
        #[command(flatten)]
        input: SeedInput,
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<i64>,
    },
    /// Solve for a compatible quantization matrix.
    Quantize {
        #[command(flatten)]
        input: SeedInput,
        /// `k=v`: the diagonal entry δ_k of Λ·B̃ = −δ.
        #[arg(long = "delta", value_parser = parse_delta, allow_hyphen_values = true)]
        delta: Vec<(i64, i64)>,
        /// `i,j=v`: fix Λ_ij.
        #[arg(long = "pin", value_parser = parse_pin, allow_hyphen_values = true)]
        pin: Vec<(i64, i64, i64)>,
        /// Accept the minimal-norm member when the solution is not unique,
        /// scaling δ if that member is not integral.
        #[arg(long)]
        min_norm: bool,
    },
    /// Basis computations.
    #[command(subcommand)]
    Basis(BasisCmd),
    /// Independent oracles.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Towers of good subseeds.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Draw the ice quiver of a seed.
    Export {
        format: ExportFormat,
        #[command(flatten)]
        input: SeedInput,
    },
}

#[derive(Args)]
struct SeedInput {
    /// A seed file, or the name of a shipped fixture.
    #[arg(long)]
    seed: String,
}

#[derive(Subcommand)]
enum SeedCmd {
    /// Summarize a seed.
    Show {
        #[command(flatten)]
        input: SeedInput,
    },
    /// Rewrite a seed file in canonical form.
    Canon {
        #[command(flatten)]
        input: SeedInput,
    },
    /// Freeze unfrozen vertices.
    Freeze {
        #[command(flatten)]
        input: SeedInput,
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<i64>,
    },
}

#[derive(Args)]
struct WordArgs {
    /// Preset (`a1`..`a9`, `b2`, `g2`) or a Cartan file.
    #[arg(long)]
    cartan: String,
    /// Comma list of signed letters, e.g. `1,-1,2,-2,1,-1`.
    #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
    word: SignedWord,
    /// Position of the first letter.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    start: i64,
}

impl WordArgs {
    fn resolve(&self) -> Result<(SignedWord, CartanData), Error> {
        let cartan = load_cartan(&self.cartan)?;
        let word = SignedWord::new(self.start, self.word.signed_letters().to_vec())?;
        word.check_letters(&cartan)?;
        Ok((word, cartan))
    }
}

#[derive(Subcommand)]
enum WordCmd {
    /// Build the seed of a word (the unfrozen-restricted seed unless `--ddot`).
    Seed {
        #[command(flatten)]
        word: WordArgs,
        /// Build the full seed with the added Coxeter vertices.
        #[arg(long)]
        ddot: bool,
        /// Take the opposite seed.
        #[arg(long)]
        op: bool,
        /// Attach Λ with δ_k = d_k (scaled to be integral).
        #[arg(long)]
        quantum: bool,
    },
    /// The green-to-red sequence Σ of an unsigned word.
    Sigma {
        #[command(flatten)]
        word: WordArgs,
    },
}

#[derive(Subcommand)]
enum BasisCmd {
    /// A triangular-basis element, truncated at `--order`.
    Tri {
        #[command(flatten)]
        input: SeedInput,
        /// Degree as `{i:e, ...}`.
        #[arg(long, value_parser = parse_degree)]
        degree: ExpVec,
        #[arg(long, default_value_t = 6)]
        order: i64,
        /// Word of the seed, to reach `s[1]` through Σ.
        #[arg(long, value_parser = parse_word, allow_hyphen_values = true, requires = "cartan", conflicts_with = "sequence")]
        word: Option<SignedWord>,
        #[arg(long)]
        cartan: Option<String>,
        /// A green-to-red mutation sequence, e.g. `1,2,1`.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true, required_unless_present = "word")]
        sequence: Option<Vec<i64>>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Exchange relations as identities among SL_n minors.
    Minors {
        /// The seed to check; defaults to the opposite of the word's full seed.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
        word: SignedWord,
        /// Defaults to type A of the largest letter.
        #[arg(long)]
        cartan: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Args)]
struct RuleArgs {
    /// `ghl-a1` or `periodic:<cartan>:<word>`.
    #[arg(long, default_value = "ghl-a1", value_parser = parse_rule)]
    rule: TowerRule,
    #[arg(long, default_value_t = 5)]
    radius: usize,
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Build and validate the stages.
    Build {
        #[command(flatten)]
        rule: RuleArgs,
        /// Quantize the stages (base solve, then unique extension).
        #[arg(long)]
        quantum: bool,
    },
    /// Run a windowed query until two consecutive stages agree.
    Compute {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        query: QueryKind,
        /// `lo..hi` for Λ queries.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
        #[arg(long, value_parser = parse_degree)]
        degree: Option<ExpVec>,
        #[arg(long, default_value_t = 6)]
        order: i64,
        #[arg(long, allow_hyphen_values = true)]
        position: Option<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryKind {
    Lambda,
    Triangular,
    Fundamental,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Latex,
}

fn parse_word(s: &str) -> Result<SignedWord, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_degree(s: &str) -> Result<ExpVec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rule(s: &str) -> Result<TowerRule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"))).collect()
}

fn parse_delta(s: &str) -> Result<(i64, i64), String> {
    let (k, v) = s.split_once('=').ok_or("expected k=v")?;
    Ok((k.trim().parse().map_err(|_| "bad vertex")?, v.trim().parse().map_err(|_| "bad value")?))
}

fn parse_pin(s: &str) -> Result<(i64, i64, i64), String> {
    let (ij, v) = s.split_once('=').ok_or("expected i,j=v")?;
    let (i, j) = ij.split_once(',').ok_or("expected i,j=v")?;
    Ok((
        i.trim().parse().map_err(|_| "bad vertex")?,
        j.trim().parse().map_err(|_| "bad vertex")?,
        v.trim().parse().map_err(|_| "bad value")?,
    ))
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo: i64 = lo.trim().parse().map_err(|_| "bad lower end")?;
    let hi: i64 = hi.trim().parse().map_err(|_| "bad upper end")?;
    if lo > hi {
        return Err("empty window".into());
    }
    Ok((lo, hi))
}

/// A path, or failing that a fixture name.
fn load_seed(spec: &str) -> Result<Seed, Error> {
    let path = Path::new(spec);
    if path.exists() {
        return read_seed(path);
    }
    let fixture: PathBuf = fixture_path(spec);
    if fixture.exists() {
        return read_seed(&fixture);
    }
    Err(Error::Io(format!("{spec}: no such file or fixture")))
}

fn list(xs: impl IntoIterator<Item = i64>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// What a command prints: seed files are emitted as-is in both modes.
enum Output {
    Text(String),
    Json(Value),
}

struct Ctx {
    json: bool,
    rng_seed: u64,
    jobs: usize,
}

impl Ctx {
    fn out(&self, text: String, value: Value) -> Output {
        if self.json {
            Output::Json(value)
        } else {
            Output::Text(text)
        }
    }
}

fn seed_output(seed: &Seed) -> Output {
    Output::Text(seed_to_json(seed))
}

fn show(ctx: &Ctx, seed: &Seed) -> Output {
    let uf = seed.unfrozen();
    let deltas = seed.lambda().map(|_| seed.check_compatible());
    let mut text = String::new();
    let _ = writeln!(text, "vertices: {}", list(seed.vertices().iter().copied()));
    let _ = writeln!(text, "frozen: {}", list(seed.frozen().iter().copied()));
    let _ = writeln!(text, "unfrozen: {}", list(uf.iter().copied()));
    let _ = writeln!(text, "injective: {}", if seed.is_injective() { "yes" } else { "no" });
    let quantum = match &deltas {
        None => "no".to_string(),
        Some(Ok(d)) => format!("yes, δ = {}", d.iter().map(|(k, x)| format!("{k}:{x}")).collect::<Vec<_>>().join(",")),
        Some(Err(e)) => format!("Λ present but not compatible ({e})"),
    };
    let _ = writeln!(text, "quantum: {quantum}");
    let value = json!({
        "vertices": seed.vertices(),
        "frozen": seed.frozen(),
        "unfrozen": uf,
        "injective": seed.is_injective(),
        "quantum": seed.is_quantum(),
        "deltas": match deltas { Some(Ok(d)) => json!(d), _ => Value::Null },
    });
    ctx.out(text, value)
}

fn run(cli: Cli) -> Result<Output, Error> {
    let ctx = Ctx { json: cli.json, rng_seed: cli.rng_seed, jobs: cli.jobs };
    match cli.command {
        Command::Seed(SeedCmd::Show { input }) => Ok(show(&ctx, &load_seed(&input.seed)?)),
        Command::Seed(SeedCmd::Canon { input }) => Ok(seed_output(&load_seed(&input.seed)?)),
        Command::Seed(SeedCmd::Freeze { input, at }) => {
            let f: BTreeSet<i64> = at.into_iter().collect();
            Ok(seed_output(&load_seed(&input.seed)?.freeze(&f)?))
        }
        Command::Word(WordCmd::Seed { word, ddot, op, quantum }) => {
            let (w, cartan) = word.resolve()?;
            let mut seed =
                if ddot { build_ddot_seed(&w, &cartan, cartan.index())? } else { build_dot_seed(&w, &cartan)? };
            if op {
                seed = seed.opposite();
            }
            if quantum {
                seed = clusterkit::quantize::quantize_word_seed(&seed)?.0;
            }
            Ok(seed_output(&seed))
        }
        Command::Word(WordCmd::Sigma { word }) => {
            let (w, cartan) = word.resolve()?;
            let data = sigma_sequence(&w, &cartan)?;
            let mut text = String::new();
            for (k, g) in w.positions().zip(&data.groups) {
                let _ = writeln!(text, "Σ_{k}: {}", if g.is_empty() { "-".into() } else { list(g.iter().copied()) });
            }
            let _ = writeln!(text, "sequence: {}", list(data.sequence.iter().copied()));
            let _ = writeln!(
                text,
                "σ: {}",
                data.sigma.iter().map(|(k, s)| format!("{k}->{s}")).collect::<Vec<_>>().join(" ")
            );
            Ok(ctx.out(text, json!({ "groups": data.groups, "sequence": data.sequence, "sigma": data.sigma })))
        }
        Command::Mutate { input, at } => Ok(seed_output(&load_seed(&input.seed)?.mutate_seq(&at)?)),
        Command::Quantize { input, delta, pin, min_norm } => {
            let seed = load_seed(&input.seed)?.classical();
            let mut deltas: BTreeMap<i64, i64> = seed.unfrozen().into_iter().map(|k| (k, seed.d(k))).collect();
            deltas.extend(delta);
            let problem = pin.into_iter().fold(CompatibilityProblem::new(&seed, deltas), |p, (i, j, x)| p.pin(i, j, x));
            match solve_lambda(&problem)? {
                LambdaSolution::Unique(s) => Ok(seed_output(&s)),
                LambdaSolution::NotUnique(f) if min_norm => {
                    let c = f.denominator();
                    if c != 1 {
                        eprintln!("note: δ scaled by {c} to make the minimal-norm solution integral");
                    }
                    Ok(seed_output(&seed.with_lambda(f.scaled_form(c))?))
                }
                LambdaSolution::NotUnique(f) => Err(Error::Domain(format!(
                    "Λ is not unique: {} free direction(s); pin entries or pass --min-norm",
                    f.free.len()
                ))),
                LambdaSolution::NoSolution(why) => Err(Error::Domain(why)),
            }
        }
        Command::Basis(BasisCmd::Tri { input, degree, order, word, cartan, sequence }) => {
            let seed = load_seed(&input.seed)?;
            let family = match (word, cartan, sequence) {
                (Some(w), Some(c), _) => {
                    let cartan = load_cartan(&c)?;
                    w.check_letters(&cartan)?;
                    InitialFamily::for_word(&w, &cartan, &seed)?
                }
                (_, _, Some(seq)) => InitialFamily::from_sequence(&seed, &seq)?,
                _ => unreachable!("clap requires --word with --cartan, or --sequence"),
            };
            let z = kl_correct(&degree, &family, order)?;
            let value = json!({
                "degree": degree.to_string(),
                "order": order,
                "terms": z.fpoly().iter().map(|(n, c)| json!([n.to_string(), c.to_string()])).collect::<Vec<_>>(),
            });
            Ok(ctx.out(format!("{z}\n"), value))
        }
        Command::Verify(VerifyCmd::Minors { seed, word, cartan, samples }) => {
            let cartan = match cartan {
                Some(c) => load_cartan(&c)?,
                None => {
                    let n = word.signed_letters().iter().map(|a| a.unsigned_abs()).max().unwrap_or(1);
                    CartanData::type_a(n as usize)
                }
            };
            word.check_letters(&cartan)?;
            let labels = minor_labels(&word, &cartan)?;
            let seed = match seed {
                Some(s) => load_seed(&s)?,
                None => build_ddot_seed(&word, &cartan, cartan.index())?.opposite(),
            };
            if seed.vertices() != labels.keys().copied().collect::<Vec<_>>() {
                return Err(Error::Domain("the seed's vertices do not match the word's minor labels".into()));
            }
            let reports =
                verify_seed(&seed, &labels, |k| flipped_label(&word, &cartan, k), samples, ctx.rng_seed, ctx.jobs)?;
            let mut text = String::new();
            for r in &reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                let flip = if r.flip_checked { ", flip label checked" } else { "" };
                let _ = write!(text, "{}: {status} ({} samples{flip})", r.vertex, r.samples);
                if let Some(c) = &r.counterexample {
                    let _ = write!(text, " counterexample: {c}");
                }
                text.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let value = json!(reports
                .iter()
                .map(|r| json!({
                    "vertex": r.vertex,
                    "label": labels[&r.vertex].to_string(),
                    "samples": r.samples,
                    "divisible": r.divisible,
                    "flip_checked": r.flip_checked,
                    "counterexample": r.counterexample,
                    "passed": r.passed(),
                }))
                .collect::<Vec<_>>());
            if failed > 0 {
                print(ctx.out(text, value));
                return Err(Error::Domain(format!("{failed} exchange relation(s) failed")));
            }
            Ok(ctx.out(text, value))
        }
        Command::Tower(TowerCmd::Build { rule, quantum }) => {
            let tower = build_interval_tower(&rule.rule, rule.radius)?;
            let stages = if quantum { tower.quantize()? } else { tower.stages().to_vec() };
            let mut text = String::new();
            for (r, s) in stages.iter().enumerate() {
                let vs = s.vertices();
                let good = match stages.get(r + 1) {
                    Some(next) => {
                        if check_good_subseed(s, next).good {
                            "good subseed of the next stage"
                        } else {
                            "NOT a good subseed"
                        }
                    }
                    None => "top stage",
                };
                let _ = writeln!(
                    text,
                    "stage {r}: vertices [{}, {}], frozen {{{}}}, {good}",
                    vs[0],
                    vs[vs.len() - 1],
                    list(s.frozen().iter().copied())
                );
            }
            let value = Value::Array(
                stages
                    .iter()
                    .map(|s| serde_json::from_str(&seed_to_json(s)).expect("canonical seed is JSON"))
                    .collect(),
            );
            Ok(ctx.out(text, value))
        }
        Command::Tower(TowerCmd::Compute { rule, query, window, degree, order, position }) => {
            let tower = build_interval_tower(&rule.rule, rule.radius)?;
            let q = match query {
                QueryKind::Lambda => {
                    let (lo, hi) =
                        window.ok_or_else(|| Error::Domain("--query lambda needs --window lo..hi".into()))?;
                    Query::Lambda { lo, hi }
                }
                QueryKind::Triangular => Query::Triangular {
                    degree: degree.ok_or_else(|| Error::Domain("--query triangular needs --degree".into()))?,
                    order,
                },
                QueryKind::Fundamental => Query::Fundamental {
                    position: position.ok_or_else(|| Error::Domain("--query fundamental needs --position".into()))?,
                },
            };
            let s = stable_compute(&tower, &q)?;
            let text =
                format!("{}\nstable from stage {}, confirmed at stage {}\n", s.value, s.first_stage, s.confirmed_at);
            let value = json!({
                "value": s.value.to_string(),
                "first_stage": s.first_stage,
                "confirmed_at": s.confirmed_at,
            });
            Ok(ctx.out(text, value))
        }
        Command::Export { format, input } => {
            let seed = load_seed(&input.seed)?;
            Ok(Output::Text(match format {
                ExportFormat::Dot => to_dot(&seed),
                ExportFormat::Latex => to_latex(&seed),
            }))
        }
    }
}

fn print(out: Output) {
    match out {
        Output::Text(t) => print!("{t}"),
        Output::Json(v) => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print(out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clusterkit::io::seed_from_json;

    #[test]
    fn flag_value_parsers() {
        assert_eq!(parse_delta("3=-2"), Ok((3, -2)));
        assert_eq!(parse_pin("-1,0=4"), Ok((-1, 0, 4)));
        assert_eq!(parse_window("-2..2"), Ok((-2, 2)));
        assert!(parse_window("2..-2").is_err());
        assert!(parse_list("1,x").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn seed_json_parses_back() {
        let s = clusterkit::io::load_fixture("sl2_word").unwrap();
        assert_eq!(seed_from_json(&seed_to_json(&s)).unwrap(), s);
    }
}
