//! The `dblcat` command line.
//!
//! Every command reads one document and prints a line-oriented `key: value` report. With
//! `--machine` the same data follows as a canonical JSON block after a `--- machine` line.
//! Exit codes: 0 when the check passes or the decision is positive, 1 when it fails, 2 on input
//! errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::cat::validate_category;
use crate::crossprod::{
    build_crossed_product, check_equivalence, check_eval_injective, check_eval_properties, check_well_defined,
    evaluation_functor, CrossedProduct,
};
use crate::doublecat::{validate_double_category, FiniteDoubleCategory};
use crate::error::CoreError;
use crate::implicit::{evaluation_injectivity_implicit, is_length_one_implicit};
use crate::framed::{classify_morphisms, is_framed, MorphismClass};
use crate::indexing::{check_indexing_morphism, induce_indexing, induce_opindexing, validate_indexing, Direction, Pi2Indexing};
use crate::instances::rel::{FrameClass, FunctionCategory, RelDoubleCategory};
use crate::instances::spec::{build_instance, InstanceKind, InstanceSpec, RestrictionKind};
use crate::instances::witness::{noninjectivity_search, replay_witness};
use crate::io::{canonical_json, parse_document, serialize_document, to_value, Document};
use crate::length::{all_squares_canonical, first_non_canonical, is_length_one};
use crate::pi2::{eckmann_hilton_check, pi2_monoids};
use crate::report::ValidationReport;
use crate::twocat::{validate_decorated, validate_two_category};
use crate::DEFAULT_BUDGET;

#[derive(Debug, Parser)]
#[command(name = "dblcat", version, about = "Checks finite double categories, their π₂-indexings and crossed products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Enumeration cap for builders and tabulation.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// How many violation witnesses to print.
    #[arg(long, global = true, value_enum, default_value_t = Witnesses::First)]
    pub witnesses: Witnesses,
    /// Append a machine-readable block.
    #[arg(long, global = true)]
    pub machine: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Witnesses {
    None,
    First,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Indexing,
    Opindexing,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every law of a document.
    Validate { file: PathBuf },
    /// π₂ monoids and the Eckmann-Hilton check at every object.
    Pi2 { file: PathBuf },
    /// Search for the π₂-(op)indexing a double category induces.
    Induce {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DirectionArg::Opindexing)]
        direction: DirectionArg,
    },
    /// Build and check the crossed product of an indexing, or of the opindexing a double category
    /// induces.
    Crossprod { file: PathBuf },
    /// Framedness, cleavage flags and, with --classify, fully faithful / absolutely dense frames.
    Framed {
        file: PathBuf,
        #[arg(long)]
        classify: bool,
    },
    /// γC, the length-one decision and canonical decompositions.
    Length { file: PathBuf },
    /// Properties of the evaluation functor out of the crossed product.
    Evalcheck { file: PathBuf },
    /// Search for two crossed-product squares identified by the evaluation functor.
    Witness { file: PathBuf },
    /// Build an instance_spec and print it as a double_category document.
    Instance {
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Exit code and everything written to standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    lines: Vec<String>,
    machine: Map<String, Value>,
    witnesses: Witnesses,
}

impl Out {
    fn new(witnesses: Witnesses) -> Self {
        Self {
            lines: Vec::new(),
            machine: Map::new(),
            witnesses,
        }
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    fn put(&mut self, key: &str, value: Value) {
        self.machine.insert(key.to_string(), value);
    }

    fn both(&mut self, key: &str, value: impl std::fmt::Display + serde::Serialize) {
        self.kv(key, &value);
        self.put(key, to_value(&value));
    }

    fn report(&mut self, key: &str, r: &ValidationReport) {
        self.kv(&format!("{key}.violations"), r.violations.len());
        let shown = match self.witnesses {
            Witnesses::None => 0,
            Witnesses::First => 1,
            Witnesses::All => usize::MAX,
        };
        for v in r.violations.iter().take(shown) {
            self.kv(&format!("{key}.violation"), v);
        }
        for n in &r.notes {
            self.kv(&format!("{key}.note"), n);
        }
        self.put(key, to_value(r));
    }

    fn finish(mut self, code: i32, machine: bool) -> Outcome {
        let mut stdout = self.lines.join("\n");
        stdout.push('\n');
        if machine {
            self.machine.insert("exit_code".into(), json!(code));
            stdout.push_str("--- machine\n");
            stdout.push_str(&canonical_json(&Value::Object(self.machine)));
        }
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

fn input_error(message: impl std::fmt::Display) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

fn read(file: &PathBuf) -> Result<Document, Outcome> {
    let text = std::fs::read_to_string(file).map_err(|e| input_error(format!("cannot read {}: {e}", file.display())))?;
    parse_document(&text).map_err(|e| input_error(format!("{}: {e}", file.display())))
}

fn double_of(doc: &Document, budget: u128) -> Result<FiniteDoubleCategory, Outcome> {
    match doc {
        Document::DoubleCategory(c) => Ok(c.clone()),
        Document::InstanceSpec(s) => build_instance(s, budget).map_err(input_error),
        other => Err(input_error(format!(
            "expected a double_category or instance_spec document, found {}",
            to_value(&other.kind())
        ))),
    }
}

fn bool_code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> Outcome
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
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match run(&cli) {
        Ok(out) | Err(out) => out,
    }
}

fn run(cli: &Cli) -> Result<Outcome, Outcome> {
    let mut out = Out::new(cli.witnesses);
    let budget = cli.budget;
    let code = match &cli.command {
        Command::Validate { file } => {
            let doc = read(file)?;
            out.kv("command", "validate");
            out.both("kind", to_value(&doc.kind()).as_str().unwrap_or_default().to_string());
            let report = match &doc {
                Document::Category(c) => validate_category(c),
                Document::TwoCategory(b) => validate_two_category(b),
                Document::Decorated(d) => validate_decorated(d),
                Document::DoubleCategory(c) => validate_double_category(c),
                Document::Indexing(phi) => validate_indexing(phi),
                Document::InstanceSpec(_) => validate_double_category(&double_of(&doc, budget)?),
            };
            out.report("report", &report);
            bool_code(report.is_empty())
        }
        Command::Pi2 { file } => {
            let c = double_of(&read(file)?, budget)?;
            out.kv("command", "pi2");
            let monoids = pi2_monoids(&c);
            let mut all_ok = true;
            let mut machine = Vec::new();
            for a in c.vertical().objects() {
                let eh = eckmann_hilton_check(&c, a);
                all_ok &= eh.is_empty();
                out.report(&format!("object.{}.eckmann_hilton", a.0), &eh);
            }
            match monoids {
                Ok(ms) => {
                    for m in &ms {
                        let p = &m.presentation;
                        out.kv(&format!("object.{}.size", m.object.0), p.size());
                        out.kv(&format!("object.{}.unit", m.object.0), p.unit().0);
                        out.kv(
                            &format!("object.{}.squares", m.object.0),
                            m.elements.iter().map(|s| s.0.to_string()).collect::<Vec<_>>().join(" "),
                        );
                        machine.push(json!({
                            "object": m.object,
                            "squares": m.elements,
                            "presentation": to_value(p),
                        }));
                    }
                }
                Err(e) => {
                    all_ok = false;
                    out.kv("pi2.error", e);
                }
            }
            out.put("monoids", Value::Array(machine));
            bool_code(all_ok)
        }
        Command::Induce { file, direction } => {
            let c = double_of(&read(file)?, budget)?;
            out.kv("command", "induce");
            let direction = match direction {
                DirectionArg::Indexing => Direction::Indexing,
                DirectionArg::Opindexing => Direction::Opindexing,
            };
            out.both("direction", to_value(&direction).as_str().unwrap_or_default().to_string());
            let phi = match direction {
                Direction::Indexing => induce_indexing(&c),
                Direction::Opindexing => induce_opindexing(&c),
            };
            match phi {
                Ok(phi) => {
                    out.both("induced", true);
                    for (f, row) in phi.maps.iter().enumerate() {
                        out.kv(
                            &format!("map.m{f}"),
                            row.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" "),
                        );
                    }
                    let doc = serialize_document(&Document::Indexing(phi));
                    out.put("indexing", serde_json::from_str(&doc).expect("canonical document"));
                    0
                }
                Err(e @ (CoreError::NoFactorization { .. } | CoreError::NonUniqueFactorization { .. })) => {
                    out.both("induced", false);
                    out.kv("reason", &e);
                    out.put("reason", to_value(&e.to_string()));
                    1
                }
                Err(e) => return Err(input_error(e)),
            }
        }
        Command::Crossprod { file } => {
            let doc = read(file)?;
            out.kv("command", "crossprod");
            let phi = match &doc {
                Document::Indexing(phi) => phi.clone(),
                _ => induce_opindexing(&double_of(&doc, budget)?).map_err(input_error)?,
            };
            crossprod_report(&mut out, &phi, budget)?
        }
        Command::Framed { file, classify } => {
            let doc = read(file)?;
            out.kv("command", "framed");
            framed_report(&mut out, &doc, *classify, budget)?
        }
        Command::Length { file } => {
            let doc = read(file)?;
            out.kv("command", "length");
            let c = match double_of(&doc, budget) {
                Ok(c) => c,
                Err(e) => {
                    let rel = implicit_rel(&doc).ok_or(e)?;
                    let l = is_length_one_implicit(&rel, budget).map_err(input_error)?;
                    out.both("squares", "not tabulated".to_string());
                    out.both("gamma", l.gamma);
                    out.both("length_one", l.holds);
                    if let Some(w) = l.witness {
                        out.kv("length_one.witness", format!("{w:?}"));
                    }
                    return Ok(out.finish(bool_code(l.holds), cli.machine));
                }
            };
            let l = is_length_one(&c);
            out.both("squares", c.square_count());
            out.both("gamma", l.gamma.len());
            out.both("length_one", l.holds);
            if let Some(w) = l.witness {
                out.both("length_one.witness", w.0);
            }
            let canonical = all_squares_canonical(&c);
            out.both("all_canonical", canonical);
            if let Some(s) = first_non_canonical(&c) {
                out.both("non_canonical.witness", s.0);
            }
            bool_code(l.holds)
        }
        Command::Evalcheck { file } => {
            let c = double_of(&read(file)?, budget)?;
            out.kv("command", "evalcheck");
            let phi = induce_opindexing(&c).map_err(input_error)?;
            let q = build_crossed_product(&phi, budget).map_err(input_error)?;
            let bang = evaluation_functor(&q, &c).map_err(input_error)?;
            let props = check_eval_properties(&bang, &q, &c).map_err(input_error)?;
            out.both("crossed_product.squares", q.double.square_count());
            out.both("horizontalization_identity", !props.has_law("horizontalization.identity"));
            out.both("full_on_gamma", !props.has_law("full_on_gamma"));
            out.report("properties", &props);
            let collision = check_eval_injective(&bang);
            out.both("injective", collision.is_none());
            if let Some((a, b)) = collision {
                out.kv("injective.collision", format!("{} {}", a.0, b.0));
                out.put("injective.collision", json!([a.0, b.0]));
            }
            let phi_q = induce_opindexing(&q.double).map_err(input_error)?;
            let law = check_indexing_morphism(&bang, &q.double, &c, &phi_q, &phi).map_err(input_error)?;
            out.report("indexing_morphism", &law);
            bool_code(props.is_empty() && law.is_empty())
        }
        Command::Witness { file } => {
            let doc = read(file)?;
            out.kv("command", "witness");
            let c = match double_of(&doc, budget) {
                Ok(c) => c,
                Err(e) => {
                    let rel = implicit_rel(&doc).ok_or(e)?;
                    let ev = evaluation_injectivity_implicit(&rel, budget).map_err(input_error)?;
                    out.both("triples", ev.triples);
                    out.both("classes", ev.classes);
                    out.both("witness", ev.witness.is_some());
                    if let Some((x, y, image)) = ev.witness {
                        out.kv("first", format!("{x:?}"));
                        out.kv("second", format!("{y:?}"));
                        out.kv("image", format!("{image:?}"));
                    }
                    return Ok(out.finish(bool_code(ev.witness.is_some()), cli.machine));
                }
            };
            let s = noninjectivity_search(&c, budget).map_err(input_error)?;
            out.both("crossed_product.squares", s.crossed.double.square_count());
            match s.witness {
                Some(w) => {
                    let replayed = replay_witness(&s.crossed, &s.bang, &w).map_err(input_error)?;
                    out.both("witness", true);
                    out.kv("first", format!("{:?} class {}", w.first, w.first_class.0));
                    out.kv("second", format!("{:?} class {}", w.second, w.second_class.0));
                    out.kv("image", w.image.0);
                    out.both("replay", replayed);
                    out.put("pair", to_value(&w));
                    bool_code(replayed)
                }
                None => {
                    out.both("witness", false);
                    1
                }
            }
        }
        Command::Instance { file, output } => {
            let doc = read(file)?;
            let c = double_of(&doc, budget)?;
            let text = serialize_document(&Document::DoubleCategory(c));
            match output {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
                    out.kv("command", "instance");
                    out.kv("written", path.display());
                }
                None => {
                    return Ok(Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    })
                }
            }
            0
        }
    };
    Ok(out.finish(code, cli.machine))
}

fn crossprod_report(out: &mut Out, phi: &Pi2Indexing, budget: u128) -> Result<i32, Outcome> {
    let q: CrossedProduct = build_crossed_product(phi, budget).map_err(input_error)?;
    out.both("direction", to_value(&phi.direction).as_str().unwrap_or_default().to_string());
    out.both("squares", q.double.square_count());
    out.both("one_step_is_closed", q.one_step_is_closed);
    let valid = validate_double_category(&q.double);
    out.report("double_category", &valid);
    let wd = check_well_defined(&q).map_err(input_error)?;
    out.report("well_defined", &wd);
    let eq = check_equivalence(&q).map_err(input_error)?;
    out.report("equivalence", &eq);
    let l = is_length_one(&q.double);
    out.both("length_one", l.holds);
    let canonical = all_squares_canonical(&q.double);
    out.both("all_canonical", canonical);
    Ok(bool_code(valid.is_empty() && wd.is_empty() && eq.is_empty() && l.holds && canonical))
}

/// Rel or one of its restrictions, without tabulating squares. Fully faithful frames in Rel are
/// the injections and absolutely dense ones the surjections.
fn implicit_rel(doc: &Document) -> Option<RelDoubleCategory> {
    let Document::InstanceSpec(InstanceSpec {
        builder: InstanceKind::Rel { n },
        restriction,
    }) = doc
    else {
        return None;
    };
    let class = match restriction {
        None => FrameClass::All,
        Some(RestrictionKind::Star) => FrameClass::Bijective,
        Some(RestrictionKind::Tilde) => FrameClass::Injective,
        Some(RestrictionKind::Hat) => FrameClass::Surjective,
    };
    RelDoubleCategory::new(&(1..=*n).collect::<Vec<_>>(), class).ok()
}

/// Function values of the vertical morphisms when the document describes relations or spans.
fn frame_functions(doc: &Document) -> Option<FunctionCategory> {
    let Document::InstanceSpec(InstanceSpec { builder, restriction }) = doc else { return None };
    let star = *restriction == Some(RestrictionKind::Star);
    let pick = |class| if star { FrameClass::Bijective } else { class };
    match builder {
        InstanceKind::Rel { n } if restriction.is_none() || star => {
            FunctionCategory::new(&(1..=*n).collect::<Vec<_>>(), pick(FrameClass::All)).ok()
        }
        InstanceKind::Span { sizes, frames, .. } if restriction.is_none() || star => FunctionCategory::new(sizes, pick(*frames)).ok(),
        _ => None,
    }
}

fn classification_lines(out: &mut Out, classes: &[MorphismClass], functions: Option<&FunctionCategory>) {
    let mut machine = Vec::new();
    for m in classes {
        let mut line = format!("ff={} ad={}", m.fully_faithful, m.absolutely_dense);
        let mut entry = json!({
            "morphism": m.morphism,
            "fully_faithful": m.fully_faithful,
            "absolutely_dense": m.absolutely_dense,
        });
        if let Some(fc) = functions {
            let values = fc.function(m.morphism);
            let (inj, sur) = (fc.is_injective(m.morphism), fc.is_surjective(m.morphism));
            line.push_str(&format!(" injective={inj} surjective={sur} values={values:?}"));
            entry["injective"] = json!(inj);
            entry["surjective"] = json!(sur);
            entry["values"] = json!(values);
        }
        out.kv(&format!("morphism.m{}", m.morphism.0), line);
        machine.push(entry);
    }
    if let Some(fc) = functions {
        let ff_inj = classes.iter().all(|m| m.fully_faithful == fc.is_injective(m.morphism));
        let ad_sur = classes.iter().all(|m| m.absolutely_dense == fc.is_surjective(m.morphism));
        out.both("ff_equals_injective", ff_inj);
        out.both("ad_equals_surjective", ad_sur);
    }
    out.put("classification", Value::Array(machine));
}

fn framed_report(out: &mut Out, doc: &Document, classify: bool, budget: u128) -> Result<i32, Outcome> {
    let functions = frame_functions(doc);
    let c = match double_of(doc, budget) {
        Ok(c) => c,
        Err(e) => {
            // relations that do not fit the budget are checked on the implicit model
            let Some(rel) = implicit_rel(doc) else { return Err(e) };
            if matches!(doc, Document::InstanceSpec(InstanceSpec { restriction: Some(_), .. })) {
                let r = is_framed(&rel);
                out.both("framed", r.is_framed());
                out.report("niches", &r.report);
                if classify {
                    classification_lines(out, &classify_morphisms(&rel), functions.as_ref());
                }
                return Ok(bool_code(r.is_framed()));
            }
            if !classify {
                return Err(e);
            }
            out.both("framed", "not checked (over budget)".to_string());
            let classes = classify_morphisms(&rel);
            classification_lines(out, &classes, functions.as_ref());
            return Ok(0);
        }
    };
    let r = is_framed(&c);
    out.both("framed", r.is_framed());
    out.report("niches", &r.report);
    out.both("normal", r.normal);
    out.both("split", r.split);
    out.both("op_normal", r.op_normal);
    out.both("op_split", r.op_split);
    if classify {
        let classes = classify_morphisms(&c);
        classification_lines(out, &classes, functions.as_ref());
    }
    Ok(bool_code(r.is_framed()))
}
