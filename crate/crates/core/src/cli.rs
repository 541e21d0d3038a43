//! The `crext` command line. [`run`] takes the arguments and output streams
//! so the commands can be driven from tests.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{validate_bimodule, validate_ring, Bimodule, BimoduleTables, FiniteRing};
use crate::catgroup::{check_sym_coherence, CoherenceFailure};
use crate::catring::{check_ring_coherence, obstruction, pi0_ring, pi1_bimodule, SkeletalCatRing};
use crate::cochain::{
    check_normalized, coboundary, cohomologous, compute_h3, equation_defects, Cochain3, Convention,
    Method,
};
use crate::correspondence::{canonical_choices, extract, realize, RepresentativeChoices};
use crate::error::{Error, Result};
use crate::io;
use crate::props;

/// Exit status of a successful command.
pub const EXIT_OK: i32 = 0;
/// Validation failures, non-cocycles, incoherent models and the like.
pub const EXIT_FAILURE: i32 = 1;
/// Bad arguments or unreadable files.
pub const EXIT_USAGE: i32 = 2;

/// Most defects listed before a report is cut short.
const MAX_LISTED: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "crext",
    version,
    about = "Mac Lane 3-cocycles of finite rings and skeletal categorical rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Snf,
    #[value(alias = "enumeration")]
    Enumerate,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a file of any kind and run its validator.
    Validate {
        file: PathBuf,
        /// Ring for bimodule, cochain and choices files.
        #[arg(long)]
        ring: Option<PathBuf>,
        /// Bimodule for cochain files.
        #[arg(long)]
        bimod: Option<PathBuf>,
        /// Model for choices files.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Invariant factors of Z^3, B^3 and H^3.
    H3 {
        ring: PathBuf,
        bimod: PathBuf,
        #[arg(long, value_enum, default_value = "snf")]
        method: MethodArg,
        /// Directory for one cocycle file per invariant factor of H^3.
        #[arg(long)]
        representatives: Option<PathBuf>,
    },
    /// Check the eight cocycle equations.
    IsCocycle {
        ring: PathBuf,
        bimod: PathBuf,
        c3: PathBuf,
    },
    /// Coboundary of a 2-cochain.
    Cobound {
        ring: PathBuf,
        bimod: PathBuf,
        c2: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two cocycles differ by a coboundary.
    Cohomologous {
        ring: PathBuf,
        bimod: PathBuf,
        c3a: PathBuf,
        c3b: PathBuf,
        /// Write the connecting 2-cochain here; failing to find one is then an error.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Build the skeletal categorical ring of a cocycle.
    Realize {
        ring: PathBuf,
        bimod: PathBuf,
        c3: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Check every coherence condition of a model.
    CheckCoherence { model: PathBuf },
    /// Extract the characteristic 3-cochain of a model.
    Extract {
        model: PathBuf,
        /// Representative choices; canonical choices when omitted.
        #[arg(long)]
        choices: Option<PathBuf>,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Realize a cocycle and extract it again.
    Roundtrip {
        ring: PathBuf,
        bimod: PathBuf,
        c3: PathBuf,
    },
    /// The obstruction element of a model.
    Obstruction { model: PathBuf },
    /// The ring pi_0 and bimodule pi_1 of a model.
    Pi {
        model: PathBuf,
        #[arg(long)]
        ring_out: Option<PathBuf>,
        #[arg(long)]
        bimod_out: Option<PathBuf>,
    },
    /// Run a randomized property suite, or `all`.
    Props {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => report_error(&e, err),
    }
}

fn report_error(e: &Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    if let Error::Validation(vs) = e {
        for v in vs.iter().take(MAX_LISTED) {
            let _ = writeln!(err, "  {v}");
        }
        if vs.len() > MAX_LISTED {
            let _ = writeln!(err, "  ... {} more", vs.len() - MAX_LISTED);
        }
    }
    exit_code(e)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Structural(_) | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn need<'a>(p: &'a Option<PathBuf>, flag: &str, kind: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::Parse(format!("validating a {kind} file needs --{flag}")))
}

fn ring_and_bimod(ring: &Path, bimod: &Path) -> Result<(FiniteRing, Bimodule)> {
    let r = io::load_ring(ring)?;
    let b = io::load_bimodule(bimod, &r)?;
    Ok((r, b))
}

fn join_factors(f: &[u64]) -> String {
    format!(
        "[{}]",
        f.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
    )
}

fn labels(ring_labels: &[String], xs: &[usize]) -> String {
    xs.iter()
        .map(|&x| ring_labels[x].as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_failures(out: &mut dyn Write, k: &SkeletalCatRing, fs: &[CoherenceFailure]) -> Result<()> {
    let ls = k.additive.objects.labels();
    let g = k.pi1().group();
    for f in fs.iter().take(MAX_LISTED) {
        write!(out, "  {} at ({})", f.check, labels(ls, &f.objects))?;
        if !f.morphisms.is_empty() {
            let ms: Vec<String> = f.morphisms.iter().map(|&m| io::group_label(g, m)).collect();
            write!(out, " morphisms ({})", ms.join(", "))?;
        }
        writeln!(out, ": defect {}", io::group_label(g, f.defect))?;
    }
    if fs.len() > MAX_LISTED {
        writeln!(out, "  ... {} more", fs.len() - MAX_LISTED)?;
    }
    Ok(())
}

fn write_cochain_difference(
    out: &mut dyn Write,
    ring: &FiniteRing,
    b: &Bimodule,
    want: &Cochain3,
    got: &Cochain3,
) -> Result<()> {
    if let Some((c, args)) = want.first_difference(got) {
        writeln!(
            out,
            "  first difference at {}({}): extracted {}, expected {}",
            c.name(),
            labels(ring.labels(), &args),
            io::group_label(b.group(), got.get(c, &args)),
            io::group_label(b.group(), want.get(c, &args))
        )?;
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Validate {
            file,
            ring,
            bimod,
            model,
        } => validate(&file, &ring, &bimod, &model, out),
        Command::H3 {
            ring,
            bimod,
            method,
            representatives,
        } => {
            let (r, b) = ring_and_bimod(&ring, &bimod)?;
            let m = match method {
                MethodArg::Snf => Method::Snf,
                MethodArg::Enumerate => Method::Enumeration,
                MethodArg::Both => Method::Both,
            };
            let res = match compute_h3(&r, &b, m) {
                Err(Error::ModelInconsistency(msg)) if m == Method::Both => {
                    writeln!(out, "methods disagree: {msg}")?;
                    return Ok(EXIT_FAILURE);
                }
                other => other?,
            };
            writeln!(
                out,
                "ring: {} elements; bimodule: {} elements",
                r.size(),
                b.group().order()
            )?;
            writeln!(out, "method: {}", m.name())?;
            writeln!(out, "Z3: {} order {}", join_factors(&res.z3), res.z3_order)?;
            writeln!(out, "B3: {} order {}", join_factors(&res.b3), res.b3_order)?;
            writeln!(out, "H3: {} order {}", join_factors(&res.h3), res.h3_order)?;
            if m == Method::Both {
                writeln!(out, "methods agree")?;
            }
            if let Some(dir) = representatives {
                if res.representatives.is_empty() && !res.h3.is_empty() {
                    return Err(Error::Precondition(
                        "representatives need --method snf or both".into(),
                    ));
                }
                std::fs::create_dir_all(&dir)?;
                for (i, c) in res.representatives.iter().enumerate() {
                    let path = dir.join(format!("h3-{i}.json"));
                    io::write_value(&path, &io::cochain3_to_json(c, &r, b.group()))?;
                    writeln!(out, "wrote {}", path.display())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::IsCocycle { ring, bimod, c3 } => {
            let (r, b) = ring_and_bimod(&ring, &bimod)?;
            let c = io::load_cochain3(&c3, &r, &b)?;
            let t = BimoduleTables::new(&b)?;
            let defects = equation_defects(&c, &r, &t, Convention::Coherent);
            if defects.is_empty() {
                writeln!(out, "cocycle: yes")?;
                return Ok(EXIT_OK);
            }
            writeln!(out, "cocycle: no ({} failing instances)", defects.len())?;
            for d in defects.iter().take(MAX_LISTED) {
                writeln!(
                    out,
                    "  {} at ({}): {}",
                    d.equation,
                    labels(r.labels(), &d.args),
                    io::group_label(b.group(), d.value)
                )?;
            }
            if defects.len() > MAX_LISTED {
                writeln!(out, "  ... {} more", defects.len() - MAX_LISTED)?;
            }
            Ok(EXIT_FAILURE)
        }
        Command::Cobound {
            ring,
            bimod,
            c2,
            output,
        } => {
            let (r, b) = ring_and_bimod(&ring, &bimod)?;
            let g = io::load_cochain2(&c2, &r, &b)?;
            let d = coboundary(&g, &r, &BimoduleTables::new(&b)?);
            let v = io::cochain3_to_json(&d, &r, b.group());
            match output {
                Some(p) => {
                    io::write_value(&p, &v)?;
                    writeln!(out, "wrote {}", p.display())?;
                }
                None => out.write_all(io::to_canonical_string(&v).as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Cohomologous {
            ring,
            bimod,
            c3a,
            c3b,
            output,
        } => {
            let (r, b) = ring_and_bimod(&ring, &bimod)?;
            let c1 = io::load_cochain3(&c3a, &r, &b)?;
            let c2 = io::load_cochain3(&c3b, &r, &b)?;
            match cohomologous(&c1, &c2, &r, &b)? {
                Some(gamma) => {
                    writeln!(out, "cohomologous: yes")?;
                    let v = io::cochain2_to_json(&gamma, &r, b.group());
                    match output {
                        Some(p) => {
                            io::write_value(&p, &v)?;
                            writeln!(out, "wrote {}", p.display())?;
                        }
                        None => out.write_all(io::to_canonical_string(&v).as_bytes())?,
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "cohomologous: no")?;
                    Ok(if output.is_some() {
                        EXIT_FAILURE
                    } else {
                        EXIT_OK
                    })
                }
            }
        }
        Command::Realize {
            ring,
            bimod,
            c3,
            output,
        } => {
            let (r, b) = ring_and_bimod(&ring, &bimod)?;
            let c = io::load_cochain3(&c3, &r, &b)?;
            let k = realize(&c, &r, &b)?;
            io::write_value(&output, &io::model_to_json(&k)?)?;
            writeln!(out, "wrote {}", output.display())?;
            Ok(EXIT_OK)
        }
        Command::CheckCoherence { model } => {
            let k = io::load_model(&model)?;
            let mut fs = check_sym_coherence(&k.additive);
            fs.extend(check_ring_coherence(&k));
            if fs.is_empty() {
                writeln!(out, "all diagrams pass")?;
                return Ok(EXIT_OK);
            }
            writeln!(out, "coherence fails ({} instances)", fs.len())?;
            write_failures(out, &k, &fs)?;
            Ok(EXIT_FAILURE)
        }
        Command::Extract {
            model,
            choices,
            output,
        } => {
            let k = io::load_model(&model)?;
            let ch = match &choices {
                Some(p) => io::load_choices(p, &k)?,
                None => canonical_choices(&k)?,
            };
            let c = extract(&k, &ch)?;
            let ring = pi0_ring(&k)?;
            io::write_value(&output, &io::cochain3_to_json(&c, &ring, k.pi1().group()))?;
            writeln!(
                out,
                "choices: {}",
                if ch.canonical {
                    "canonical"
                } else {
                    "not canonical"
                }
            )?;
            let normalized = check_normalized(&c, &ring).is_empty();
            writeln!(out, "normalized: {}", if normalized { "yes" } else { "no" })?;
            writeln!(out, "wrote {}", output.display())?;
            Ok(EXIT_OK)
        }
        Command::Roundtrip { ring, bimod, c3 } => roundtrip(&ring, &bimod, &c3, out),
        Command::Obstruction { model } => {
            let k = io::load_model(&model)?;
            let v = obstruction(&k, false)?;
            writeln!(out, "obstruction: {}", io::group_label(k.pi1().group(), v))?;
            match obstruction(&k, true) {
                Ok(_) => {
                    writeln!(out, "2-torsion and central: yes")?;
                    Ok(EXIT_OK)
                }
                Err(Error::ModelInconsistency(msg)) => {
                    writeln!(out, "2-torsion and central: no ({msg})")?;
                    Ok(EXIT_FAILURE)
                }
                Err(e) => Err(e),
            }
        }
        Command::Pi {
            model,
            ring_out,
            bimod_out,
        } => {
            let k = io::load_model(&model)?;
            let r = pi0_ring(&k)?;
            let b = pi1_bimodule(&k)?;
            writeln!(
                out,
                "pi0: {} elements ({})",
                r.size(),
                r.labels().join(", ")
            )?;
            writeln!(
                out,
                "pi1: cyclic orders {}",
                join_factors(b.group().orders())
            )?;
            for (i, l) in r.labels().iter().enumerate() {
                writeln!(
                    out,
                    "  {l}: left {:?} right {:?}",
                    b.left(i).matrix(),
                    b.right(i).matrix()
                )?;
            }
            if let Some(p) = ring_out {
                io::write_value(&p, &io::ring_to_json(&r))?;
                writeln!(out, "wrote {}", p.display())?;
            }
            if let Some(p) = bimod_out {
                io::write_value(&p, &io::bimodule_to_json(&b, &r))?;
                writeln!(out, "wrote {}", p.display())?;
            }
            Ok(EXIT_OK)
        }
        Command::Props { suite, seed, cases } => {
            let names: Vec<&str> = if suite == "all" {
                props::SUITES.to_vec()
            } else if props::SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(Error::Parse(format!(
                    "unknown suite {suite:?}; expected all or one of {}",
                    props::SUITES.join(", ")
                )));
            };
            let instances = props::catalog_instances()?;
            let mut code = EXIT_OK;
            for name in names {
                let r = props::run_suite_on(name, &instances, seed, cases)?;
                let status = if r.passed() { "pass" } else { "FAIL" };
                write!(
                    out,
                    "{name}: {status} ({} cases, {} failures",
                    r.cases,
                    r.failures.len()
                )?;
                if r.vacuous > 0 {
                    write!(out, ", {} vacuous", r.vacuous)?;
                }
                writeln!(out, ", seed {seed})")?;
                for f in r.failures.iter().take(MAX_LISTED) {
                    writeln!(out, "  {f}")?;
                }
                if r.failures.len() > MAX_LISTED {
                    writeln!(out, "  ... {} more", r.failures.len() - MAX_LISTED)?;
                }
                if !r.passed() {
                    code = EXIT_FAILURE;
                }
            }
            Ok(code)
        }
    }
}

fn validate(
    file: &Path,
    ring: &Option<PathBuf>,
    bimod: &Option<PathBuf>,
    model: &Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let v = io::read_value(file)?;
    let kind = io::kind_of(&v)?.to_string();
    match kind.as_str() {
        "ring" => {
            let r = io::ring_from_json_unchecked(&v)?;
            let report = validate_ring(&r);
            if !report.is_empty() {
                return Err(Error::Validation(report));
            }
            writeln!(out, "valid ring: {} elements", r.size())?;
        }
        "bimodule" => {
            let r = io::load_ring(need(ring, "ring", "bimodule")?)?;
            let b = io::bimodule_from_json_unchecked(&v, &r)?;
            let report = validate_bimodule(&r, &b)?;
            if !report.is_empty() {
                return Err(Error::Validation(report));
            }
            writeln!(out, "valid bimodule: {} elements", b.group().order())?;
        }
        "cochain3" => {
            let r = io::load_ring(need(ring, "ring", "cochain3")?)?;
            let b = io::load_bimodule(need(bimod, "bimod", "cochain3")?, &r)?;
            let c = io::cochain3_from_json(&v, &r, b.group())?;
            writeln!(
                out,
                "valid normalized 3-cochain: {} nonzero entries",
                c.nonzero_entries().len()
            )?;
        }
        "cochain2" => {
            let r = io::load_ring(need(ring, "ring", "cochain2")?)?;
            let b = io::load_bimodule(need(bimod, "bimod", "cochain2")?, &r)?;
            let c = io::cochain2_from_json(&v, &r, b.group())?;
            let normalized = if c.is_normalized(r.zero()) {
                "normalized"
            } else {
                "unnormalized"
            };
            writeln!(
                out,
                "valid {normalized} 2-cochain: {} nonzero entries",
                c.nonzero_entries().len()
            )?;
        }
        "model" => {
            let k = io::model_from_json(&v)?;
            writeln!(
                out,
                "valid model: {} objects, {} automorphisms each",
                k.size(),
                k.pi1().size()
            )?;
        }
        "choices" => {
            let k = io::load_model(need(model, "model", "choices")?)?;
            let ch = io::choices_from_json(&v, &k)?;
            writeln!(
                out,
                "valid choices: {}",
                if ch.canonical {
                    "canonical"
                } else {
                    "not canonical"
                }
            )?;
        }
        _ => unreachable!("kind_of only returns known kinds"),
    }
    Ok(EXIT_OK)
}

/// Realizes the cocycle and extracts it twice: with identity choices, which
/// must give it back exactly, and with canonical choices, which give a
/// cohomologous cocycle.
fn roundtrip(ring: &Path, bimod: &Path, c3: &Path, out: &mut dyn Write) -> Result<i32> {
    let (r, b) = ring_and_bimod(ring, bimod)?;
    let phi = io::load_cochain3(c3, &r, &b)?;
    let t = BimoduleTables::new(&b)?;
    if let Some(d) = equation_defects(&phi, &r, &t, Convention::Coherent).first() {
        writeln!(
            out,
            "not a cocycle: {} fails at ({})",
            d.equation,
            labels(r.labels(), &d.args)
        )?;
        return Ok(EXIT_FAILURE);
    }
    let k = realize(&phi, &r, &b)?;
    let back = extract(&k, &RepresentativeChoices::identity(k.size()))?;
    let exact = back == phi;
    writeln!(out, "roundtrip exact: {}", if exact { "yes" } else { "no" })?;
    if !exact {
        write_cochain_difference(out, &r, &b, &phi, &back)?;
    }
    let canon = extract(&k, &canonical_choices(&k)?)?;
    if canon == phi {
        writeln!(out, "canonical choices: exact")?;
    } else {
        let linked = cohomologous(&phi, &canon, &r, &b)?.is_some();
        writeln!(
            out,
            "canonical choices: cohomologous {}",
            if linked { "yes" } else { "no" }
        )?;
        write_cochain_difference(out, &r, &b, &phi, &canon)?;
        if !linked {
            return Ok(EXIT_FAILURE);
        }
    }
    Ok(if exact { EXIT_OK } else { EXIT_FAILURE })
}
