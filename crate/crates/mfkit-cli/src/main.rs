//! `mfkit` CLI: verify matrix factorizations, take syzygies and sheets,
//! compute Fitting ideals and annihilators, localize and classify module
//! presentations, enumerate cyclic modules, and run the full check suite.
//!
//! Machine output is JSON on stdout (or `--out`); human summaries go to
//! stderr. Exit code 0 means success/all-pass, 1 a failed verification or
//! check, 2 a usage or input error.

use clap::{Args, Parser, Subcommand};
use mfkit::checks::{run_suite, summary_table, CheckReport, CheckStatus, SuiteConfig};
use mfkit::json::{
    classification_json, FactorizationJson, PresentationJson, RingJson, SpectrumJson,
};
use mfkit::modules::{Freeness, ModulePresentation, SpectrumDeclaration};
use mfkit::{poly_parse, CoeffField, FamilyId, MatrixFactorization};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mfkit",
    about = "Matrix-factorization calculus over hypersurface rings",
    version
)]
struct Cli {
    /// Coefficient field: exact rationals (`q`) or the stress-test prime
    /// field (`gf32003`). Flags beat the environment, which beats the default.
    #[arg(long, global = true, env = "MFKIT_FIELD")]
    field: Option<String>,

    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MemberArgs {
    /// Family name: p2qr, x2h, xy-zn, xn-yg, a-inf-1d.
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,

    /// Family index i (z-power n for xy-zn).
    #[arg(long, default_value_t = 1)]
    i: u32,

    /// Degree parameter for the xn-yg family (n >= 4).
    #[arg(long)]
    n: Option<u32>,

    /// Read a factorization from this JSON file instead.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check A*B = B*A = f*E for a family member or a factorization file.
    Verify(MemberArgs),
    /// Swap (A, B) and print the resulting factorization.
    Syzygy(MemberArgs),
    /// Apply the sheet construction with scalar g and a fresh variable.
    Knoerrer {
        #[command(flatten)]
        member: MemberArgs,
        /// The scalar g in f + x^2*g; unknown identifiers are adjoined.
        #[arg(long, default_value = "1")]
        g: String,
        /// Name of the fresh square-zero-direction variable.
        #[arg(long, default_value = "w")]
        x_var: String,
    },
    /// Fitting ideal of a family cokernel or a presentation file.
    Fitting {
        #[command(flatten)]
        member: MemberArgs,
        /// Fitting index r.
        #[arg(long)]
        r: usize,
    },
    /// Localize at a declared prime and print the minimal presentation.
    Localize {
        #[command(flatten)]
        member: MemberArgs,
        /// Prime name from the spectrum.
        #[arg(long)]
        prime: String,
        /// Spectrum JSON file (defaults to the family's declared spectrum).
        #[arg(long)]
        spectrum: Option<PathBuf>,
    },
    /// Freeness at every declared nonmaximal prime, plus the verdict.
    Classify {
        #[command(flatten)]
        member: MemberArgs,
        #[arg(long)]
        spectrum: Option<PathBuf>,
    },
    /// Annihilator (0 : e) in a ring read from a JSON descriptor.
    Annihilator {
        /// Ring descriptor JSON file.
        #[arg(long)]
        ring: PathBuf,
        /// The element whose annihilator is computed.
        #[arg(long)]
        element: String,
        /// Optional comma-separated generators to compare against.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Enumerate cyclic modules R/(g) for divisors g of a factored f.
    Cyclic {
        /// Factored hypersurface equation, e.g. "p:2,q:1,r:1".
        #[arg(long)]
        factors: String,
    },
    /// Run the full verification battery and emit one report per check.
    PaperChecks {
        /// Restrict to a comma-separated family subset.
        #[arg(long)]
        families: Option<String>,
        /// Largest family index exercised.
        #[arg(long, default_value_t = 8)]
        max_i: u32,
        /// Attach wall-clock timings (makes output non-byte-stable).
        #[arg(long)]
        timings: bool,
        /// Test mode: flip one sign in this family's first matrix.
        #[arg(long)]
        fault: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn resolve_field(flag: &Option<String>) -> Result<CoeffField, String> {
    match flag {
        None => Ok(CoeffField::Rational),
        Some(name) => {
            CoeffField::parse_name(name).ok_or_else(|| format!("unknown field `{name}`"))
        }
    }
}

fn emit(out: &Option<PathBuf>, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_member(args: &MemberArgs, field: CoeffField) -> Result<MatrixFactorization, String> {
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let parsed: FactorizationJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        return parsed.to_mf(field).map_err(|e| e.to_string());
    }
    let name = args
        .family
        .as_ref()
        .ok_or("either --family or --file is required")?;
    let fam = FamilyId::parse(name).map_err(|e| e.to_string())?;
    fam.generate(args.i, args.n, field).map_err(|e| e.to_string())
}

fn load_spectrum(
    path: &Option<PathBuf>,
    args: &MemberArgs,
    ring: &mfkit::PolyRing,
    field: CoeffField,
) -> Result<SpectrumDeclaration, String> {
    if let Some(p) = path {
        let text = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
        let parsed: SpectrumJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        return parsed.to_spectrum(ring).map_err(|e| e.to_string());
    }
    let name = args
        .family
        .as_ref()
        .ok_or("a --spectrum file is required with --file input")?;
    let fam = FamilyId::parse(name).map_err(|e| e.to_string())?;
    Ok(fam.spectrum(field).1)
}

fn freeness_json(f: Freeness) -> Value {
    match f {
        Freeness::Free(rank) => json!({ "free": true, "rank": rank }),
        Freeness::NotFree => json!({ "free": false }),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let field = resolve_field(&cli.field)?;
    match &cli.command {
        Command::Verify(member) => {
            let mf = load_member(member, field)?;
            let rep = mf.verify().map_err(|e| e.to_string())?;
            let witness = match &rep.failure {
                Some(f) => json!({
                    "product": f.product, "row": f.row, "col": f.col,
                    "got": f.got, "expected": f.expected
                }),
                None => json!({ "size": mf.size() }),
            };
            let report = json!({
                "check_id": "verify",
                "status": if rep.ok { "pass" } else { "fail" },
                "witness": witness,
            });
            emit(&cli.out, &report)?;
            Ok(if rep.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Syzygy(member) => {
            let mf = load_member(member, field)?.syzygy();
            emit(
                &cli.out,
                &serde_json::to_value(FactorizationJson::from_mf(&mf)).unwrap(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Knoerrer { member, g, x_var } => {
            let mut mf = load_member(member, field)?;
            // Adjoin any identifiers in g that the ring does not know yet.
            let g_poly = loop {
                match poly_parse(g, mf.ring.ring()) {
                    Ok(p) => break p,
                    Err(mfkit::Error::UnknownVariable(v)) => {
                        mf = mf.extend_scalars(&[&v]).map_err(|e| e.to_string())?;
                    }
                    Err(e) => return Err(e.to_string()),
                }
            };
            let sheet = mf.knoerrer_sheet(&g_poly, x_var).map_err(|e| e.to_string())?;
            let rep = sheet.verify().map_err(|e| e.to_string())?;
            let mut value = serde_json::to_value(FactorizationJson::from_mf(&sheet)).unwrap();
            value["verified"] = json!(rep.ok);
            emit(&cli.out, &value)?;
            Ok(if rep.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Fitting { member, r } => {
            let pres = load_presentation(member, field)?;
            let gens = pres.fitting_ideal(*r).map_err(|e| e.to_string())?;
            emit(
                &cli.out,
                &json!({
                    "index": r,
                    "generators": gens.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Localize {
            member,
            prime,
            spectrum,
        } => {
            let pres = load_presentation(member, field)?;
            let spec = load_spectrum(spectrum, member, pres.ring().ring(), field)?;
            let decl = spec.prime(prime).map_err(|e| e.to_string())?;
            let loc = pres
                .ring()
                .localize(&decl.invert)
                .map_err(|e| e.to_string())?;
            let minimal = pres
                .base_change(&loc)
                .and_then(|p| p.minimalize())
                .map_err(|e| e.to_string())?;
            let free = minimal.is_free().map_err(|e| e.to_string())?;
            emit(
                &cli.out,
                &json!({
                    "prime": prime,
                    "gens": minimal.generators(),
                    "rels": minimal.relation_count(),
                    "presentation": serde_json::to_value(PresentationJson::from_presentation(&minimal)).unwrap(),
                    "freeness": freeness_json(free),
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { member, spectrum } => {
            let pres = load_presentation(member, field)?;
            let spec = load_spectrum(spectrum, member, pres.ring().ring(), field)?;
            let class = pres
                .classify_punctured_locus(&spec)
                .map_err(|e| e.to_string())?;
            emit(&cli.out, &classification_json(&class))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Annihilator {
            ring,
            element,
            expect,
        } => {
            let text = std::fs::read_to_string(ring).map_err(|e| e.to_string())?;
            let parsed: RingJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let descriptor = parsed.to_descriptor(field).map_err(|e| e.to_string())?;
            let e = poly_parse(element, descriptor.ring()).map_err(|e| e.to_string())?;
            let ann = descriptor.annihilator(&e).map_err(|e| e.to_string())?;
            let mut value = json!({
                "element": element,
                "generators": ann.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            });
            if let Some(expect) = expect {
                let gens = expect
                    .split(',')
                    .map(|s| poly_parse(s.trim(), descriptor.ring()))
                    .collect::<mfkit::Result<Vec<_>>>()
                    .map_err(|e| e.to_string())?;
                let eq = descriptor
                    .ideal_equal_in(&ann, &gens)
                    .map_err(|e| e.to_string())?;
                value["equals_expected"] = json!(eq);
            }
            emit(&cli.out, &value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cyclic { factors } => {
            let parsed = parse_factors(factors)?;
            let names: Vec<&str> = parsed.iter().map(|(n, _)| n.as_str()).collect();
            let base = mfkit::RingDescriptor::polynomial(&names, field);
            // Each factor variable is a declared prime; localizing at one
            // inverts the others.
            let primes = parsed
                .iter()
                .map(|(n, _)| {
                    Ok(mfkit::PrimeDecl {
                        name: n.clone(),
                        gens: vec![base.ring().var(n).map_err(|e| e.to_string())?],
                        invert: parsed
                            .iter()
                            .filter(|(m, _)| m != n)
                            .map(|(m, _)| base.ring().var(m).map_err(|e| e.to_string()))
                            .collect::<Result<Vec<_>, String>>()?,
                    })
                })
                .collect::<Result<Vec<_>, String>>()?;
            let maximal = parsed
                .iter()
                .map(|(n, _)| base.ring().var(n).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, String>>()?;
            let spec = SpectrumDeclaration { primes, maximal };
            let tagged = mfkit::cyclic_mcm_enumerate(&base, &parsed, &spec)
                .map_err(|e| e.to_string())?;
            let list: Vec<Value> = tagged
                .iter()
                .map(|c| {
                    json!({
                        "divisor": c.divisor.to_string(),
                        "class": classification_json(&c.class),
                    })
                })
                .collect();
            emit(&cli.out, &Value::Array(list))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PaperChecks {
            families,
            max_i,
            timings,
            fault,
        } => {
            let family_subset = match families {
                None => None,
                Some(list) => Some(
                    list.split(',')
                        .map(|s| FamilyId::parse(s.trim()).map_err(|e| e.to_string()))
                        .collect::<Result<Vec<_>, String>>()?,
                ),
            };
            let fault = match fault {
                None => None,
                Some(name) => Some(FamilyId::parse(name).map_err(|e| e.to_string())?),
            };
            let cfg = SuiteConfig {
                families: family_subset,
                max_i: *max_i,
                field,
                fault,
                timings: *timings,
            };
            let reports: Vec<CheckReport> = run_suite(&cfg);
            eprint!("{}", summary_table(&reports));
            let all_pass = reports.iter().all(|r| r.status == CheckStatus::Pass);
            emit(&cli.out, &serde_json::to_value(&reports).unwrap())?;
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn load_presentation(member: &MemberArgs, field: CoeffField) -> Result<ModulePresentation, String> {
    if let Some(path) = &member.file {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        // Accept either a presentation or a factorization file.
        if let Ok(parsed) = serde_json::from_str::<PresentationJson>(&text) {
            if let Ok(p) = parsed.to_presentation(field) {
                return Ok(p);
            }
        }
        let parsed: FactorizationJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let mf = parsed.to_mf(field).map_err(|e| e.to_string())?;
        return mf.cokernel().map_err(|e| e.to_string());
    }
    let mf = load_member(member, field)?;
    mf.cokernel().map_err(|e| e.to_string())
}

fn parse_factors(text: &str) -> Result<Vec<(String, u32)>, String> {
    text.split(',')
        .map(|part| {
            let (name, mult) = part
                .split_once(':')
                .ok_or_else(|| format!("bad factor `{part}`, expected name:multiplicity"))?;
            let mult: u32 = mult
                .trim()
                .parse()
                .map_err(|_| format!("bad multiplicity in `{part}`"))?;
            Ok((name.trim().to_string(), mult))
        })
        .collect()
}
