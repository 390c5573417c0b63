//! `phantom`: command-line driver over manifests.
//!
//! Every command reads a manifest (`--input`) or, without one, draws an
//! instance from `--ring`, `--seed` and `--size-bound`. It writes a manifest
//! of result records to stdout or `--output`.
//!
//! Exit codes: 0 ok, 1 property failure, 2 input error, 3 internal
//! consistency violation.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use phantom_core::approx::{
    extract_retract, is_cover, is_precover, phantom_cover, phantom_probes, pushout_transport,
    CoverOptions, CoverVerdict, PrecoverVerdict,
};
use phantom_core::filtration::{build_filtration, verify_filtration, FiltrationConfig};
use phantom_core::finmod::{
    directed_colimit, kernel, DirectedSystem, ModuleMorphism, Ring,
};
use phantom_core::ideals::{factor_through_projective, MorphismIdeal};
use phantom_core::manifest::Manifest;
use phantom_core::rep_a2::{extension_counterexample, rep_colimit};
use phantom_core::sample;
use phantom_core::suite;
use phantom_core::Error;

#[derive(Parser, Debug)]
#[command(name = "phantom", version, about = "Phantom morphisms over finite Z/n-modules")]
struct Cli {
    /// Modulus n, used when no input manifest is given.
    #[arg(long, global = true)]
    ring: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 50)]
    samples: usize,
    /// Quotient size target for `filtrate`; defaults to n.
    #[arg(long, global = true)]
    kappa: Option<u64>,
    /// Cardinality bound for sampled instances and probe sources.
    #[arg(long = "size-bound", global = true)]
    size_bound: Option<u64>,
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true)]
    output: Option<String>,
    /// Record to operate on; defaults to the last record of the right kind.
    #[arg(long, global = true)]
    name: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Decide whether each morphism is phantom.
    CheckPhantom,
    /// Test a morphism against the phantom probes into its target.
    Precover,
    /// Test a morphism for the phantom cover property.
    Cover,
    /// Compute the phantom cover of a module.
    PhantomCover,
    /// Push a phantom epimorphism `phi` out along a pure mono `v`.
    PushoutTransport,
    /// Split a pure mono `v` out of the kernel of a cover `phi`.
    Retract,
    /// Filter a phantom representation.
    Filtrate,
    /// Re-check a filtration.
    VerifyFiltration,
    /// Build the split extension witnessing non-closure.
    CounterexampleExt,
    /// Compute the colimit of a diagram.
    Colimit,
    /// Run every sampled property.
    VerifySuite,
}

/// A failed command with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Consistency(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<(String, u8), Failure>;

struct Ctx {
    cli: Cli,
    input: Option<Manifest>,
}

impl Ctx {
    fn ring(&self) -> Result<Ring, Failure> {
        match (&self.input, self.cli.ring) {
            (Some(m), _) => Ok(m.ring.clone()),
            (None, Some(n)) => Ok(Ring::new(n)?),
            (None, None) => Err(input_error("give --input or --ring")),
        }
    }

    fn bound(&self, default: u64) -> u64 {
        self.cli.size_bound.unwrap_or(default)
    }

    /// The selected record of `kind` in the input.
    fn pick(&self, kind: &str) -> Result<Option<String>, Failure> {
        let Some(m) = &self.input else {
            return Ok(None);
        };
        if let Some(name) = &self.cli.name {
            return Ok(Some(name.clone()));
        }
        match m.names(kind).last() {
            Some(n) => Ok(Some(n.to_string())),
            None => Err(input_error(format!("the input has no {kind} record"))),
        }
    }

    fn named_morphism(&self, name: &str) -> Result<Option<ModuleMorphism>, Failure> {
        match &self.input {
            Some(m) => Ok(Some(m.morphism(name)?.clone())),
            None => Ok(None),
        }
    }
}

fn fields(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let input = match &cli.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| input_error(format!("cannot read {path}: {e}")))?;
            Some(Manifest::parse(&text)?)
        }
        None => None,
    };
    let output = cli.output.clone();
    let ctx = Ctx { cli, input };
    let (text, code) = dispatch(&ctx)?;
    match output {
        Some(path) => fs::write(&path, &text)
            .map_err(|e| input_error(format!("cannot write {path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn dispatch(ctx: &Ctx) -> Outcome {
    match ctx.cli.command {
        Command::CheckPhantom => check_phantom(ctx),
        Command::Precover => precover(ctx, false),
        Command::Cover => precover(ctx, true),
        Command::PhantomCover => phantom_cover_cmd(ctx),
        Command::PushoutTransport => transport(ctx, false),
        Command::Retract => transport(ctx, true),
        Command::Filtrate => filtrate(ctx),
        Command::VerifyFiltration => verify(ctx),
        Command::CounterexampleExt => counterexample(ctx),
        Command::Colimit => colimit(ctx),
        Command::VerifySuite => verify_suite(ctx),
    }
}

fn check_phantom(ctx: &Ctx) -> Outcome {
    let ring = ctx.ring()?;
    let mut out = Manifest::new(&ring);
    let targets: Vec<(String, ModuleMorphism)> = match &ctx.input {
        Some(m) => {
            let names: Vec<String> = match &ctx.cli.name {
                Some(n) => vec![n.clone()],
                None => m.names("morphism").into_iter().map(String::from).collect(),
            };
            names
                .into_iter()
                .map(|n| Ok((n.clone(), m.morphism(&n)?.clone())))
                .collect::<Result<_, Error>>()?
        }
        None => {
            let mut rng = sample::rng(ctx.cli.seed);
            let bound = ctx.bound(64);
            let a = sample::module(&mut rng, &ring, bound);
            let b = sample::module(&mut rng, &ring, bound);
            let f = sample::morphism(&mut rng, &a, &b);
            out.add_morphism("f", &f)?;
            vec![("f".to_string(), f)]
        }
    };
    for (name, f) in targets {
        let record = match factor_through_projective(&f) {
            Ok(fact) => {
                out.add_morphism(&format!("{name}.first"), &fact.first)?;
                out.add_morphism(&format!("{name}.second"), &fact.second)?;
                fields(&[
                    ("morphism", name.clone()),
                    ("phantom", "true".into()),
                    ("projective", join(fact.projective.factors())),
                ])
            }
            Err(cert) => fields(&[
                ("morphism", name.clone()),
                ("phantom", "false".into()),
                (
                    "certificate",
                    format!("source generator {} does not lift along the free cover", cert.generator),
                ),
            ]),
        };
        out.add_result(&format!("check-phantom.{name}"), record)?;
    }
    Ok((out.serialize(), 0))
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cover_input(ctx: &Ctx, ring: &Ring, out: &mut Manifest) -> Result<ModuleMorphism, Failure> {
    match ctx.pick("morphism")? {
        Some(name) => Ok(ctx.named_morphism(&name)?.expect("input present")),
        None => {
            let mut rng = sample::rng(ctx.cli.seed);
            let m = sample::module(&mut rng, ring, ctx.bound(64));
            let phi = phantom_cover(&m)?;
            out.add_morphism("phi", &phi)?;
            Ok(phi)
        }
    }
}

fn precover(ctx: &Ctx, cover: bool) -> Outcome {
    let ring = ctx.ring()?;
    let mut out = Manifest::new(&ring);
    let phi = cover_input(ctx, &ring, &mut out)?;
    let ideal = MorphismIdeal::Phantom(ring.clone());
    let probes = phantom_probes(phi.target(), ctx.bound(256))?;
    let verdict = is_precover(&ideal, &phi, &probes)?;
    let mut record = fields(&[
        ("probes", probes.len().to_string()),
        ("precover", verdict.holds().to_string()),
    ]);
    if let PrecoverVerdict::Fails { probe } = verdict {
        record.push(("failing-probe".into(), probe.to_string()));
        out.add_morphism("probe", &probes[probe])?;
    } else if cover {
        let c = is_cover(&ideal, &phi, &probes, &CoverOptions::default())?;
        record.push(("cover".into(), c.holds().to_string()));
        if let CoverVerdict::NotCover { witness: Some(j) } = c {
            out.add_morphism("witness", &j)?;
        }
    }
    let tag = if cover { "cover" } else { "precover" };
    out.add_result(tag, record)?;
    Ok((out.serialize(), 0))
}

fn phantom_cover_cmd(ctx: &Ctx) -> Outcome {
    let ring = ctx.ring()?;
    let m = match ctx.pick("module")? {
        Some(name) => ctx.input.as_ref().expect("input").module(&name)?.clone(),
        None => sample::module(&mut sample::rng(ctx.cli.seed), &ring, ctx.bound(64)),
    };
    let phi = phantom_cover(&m)?;
    let mut out = Manifest::new(&ring);
    out.add_morphism("cover", &phi)?;
    out.add_result(
        "phantom-cover",
        fields(&[
            ("module", join(m.factors())),
            ("projective", join(phi.source().factors())),
            ("surjective", phi.is_surjective().to_string()),
        ]),
    )?;
    Ok((out.serialize(), 0))
}

fn transport_inputs(
    ctx: &Ctx,
    ring: &Ring,
    out: &mut Manifest,
) -> Result<(ModuleMorphism, ModuleMorphism), Failure> {
    if let Some(m) = &ctx.input {
        return Ok((m.morphism("phi")?.clone(), m.morphism("v")?.clone()));
    }
    let mut rng = sample::rng(ctx.cli.seed);
    let m = sample::module(&mut rng, ring, ctx.bound(64));
    let phi = phantom_cover(&m)?;
    let k = kernel(&phi)?.module;
    let v = sample::pure_mono(&mut rng, &k, 256.max(k.size()));
    out.add_morphism("phi", &phi)?;
    out.add_morphism("v", &v)?;
    Ok((phi, v))
}

fn transport(ctx: &Ctx, retract: bool) -> Outcome {
    let ring = ctx.ring()?;
    let mut out = Manifest::new(&ring);
    let (phi, v) = transport_inputs(ctx, &ring, &mut out)?;
    if retract {
        let r = extract_retract(&phi, &v)?;
        out.add_morphism("r", &r.r)?;
        out.add_result("retract", fields(&[("retraction", "true".into())]))?;
    } else {
        let t = pushout_transport(&phi, &v)?;
        out.add_morphism("phi'", &t.phi_prime)?;
        out.add_result("pushout-transport", fields(&[("phantom", t.phantom.to_string())]))?;
        if !t.phantom {
            return Ok((out.serialize(), 1));
        }
    }
    Ok((out.serialize(), 0))
}

fn filtrate(ctx: &Ctx) -> Outcome {
    let ring = ctx.ring()?;
    let mut out = Manifest::new(&ring);
    let rep = match ctx.pick("rep")? {
        Some(name) => ctx.input.as_ref().expect("input").rep(&name)?,
        None => sample::random_phantom_rep(ctx.cli.seed, &ring, ctx.bound(256)),
    };
    let kappa = ctx.cli.kappa.unwrap_or(ring.modulus());
    let cfg = FiltrationConfig::new(&ring, kappa)?;
    let filtration = build_filtration(&rep, &cfg)?;
    out.add_filtration("filtration", &filtration)?;
    out.add_result(
        "filtrate",
        fields(&[
            ("length", filtration.length().to_string()),
            ("kappa", kappa.to_string()),
        ]),
    )?;
    Ok((out.serialize(), 0))
}

fn verify(ctx: &Ctx) -> Outcome {
    let input = ctx
        .input
        .as_ref()
        .ok_or_else(|| input_error("verify-filtration needs --input"))?;
    let name = ctx.pick("filtration")?.expect("input present");
    let report = verify_filtration(&input.filtration(&name)?)?;
    let mut out = Manifest::new(&input.ring);
    let mut record: Vec<(String, String)> = report
        .verdicts
        .iter()
        .map(|v| {
            let value = match v.failure {
                None => "ok".to_string(),
                Some(i) => format!("fails at {i}"),
            };
            (v.condition.name().to_string(), value)
        })
        .collect();
    record.push(("passed".into(), report.passed().to_string()));
    out.add_result("verify-filtration", record)?;
    Ok((out.serialize(), if report.passed() { 0 } else { 1 }))
}

fn counterexample(ctx: &Ctx) -> Outcome {
    let ring = ctx.ring()?;
    let mut out = Manifest::new(&ring);
    let f = match ctx.pick("morphism")? {
        Some(name) => ctx.named_morphism(&name)?.expect("input present"),
        None => {
            let mut rng = sample::rng(ctx.cli.seed);
            let a = sample::nonzero_module(&mut rng, &ring, ctx.bound(64));
            let b = sample::nonzero_module(&mut rng, &ring, ctx.bound(64));
            let f = sample::morphism(&mut rng, &a, &b);
            out.add_morphism("f", &f)?;
            f
        }
    };
    let ex = extension_counterexample(&MorphismIdeal::Phantom(ring.clone()), &f)?;
    out.add_rep("middle", &ex.middle)?;
    out.add_rep("sub", &ex.sub_rep)?;
    out.add_rep("quotient", &ex.quotient.rep)?;
    out.add_result(
        "counterexample-ext",
        fields(&[
            ("middle-phantom", ex.middle_in_ideal.to_string()),
            ("sub-phantom", ex.sub_in_ideal.to_string()),
            ("quotient-phantom", ex.quotient_in_ideal.to_string()),
        ]),
    )?;
    let holds = !ex.middle_in_ideal && ex.sub_in_ideal && ex.quotient_in_ideal;
    Ok((out.serialize(), if holds { 0 } else { 1 }))
}

fn colimit(ctx: &Ctx) -> Outcome {
    let ring = ctx.ring()?;
    let mut out = Manifest::new(&ring);
    let Some(input) = &ctx.input else {
        let mut rng = sample::rng(ctx.cli.seed);
        let mut maps = Vec::new();
        let mut cur = sample::module(&mut rng, &ring, ctx.bound(32));
        for _ in 0..3 {
            let next = sample::module(&mut rng, &ring, ctx.bound(32));
            maps.push(sample::morphism(&mut rng, &cur, &next));
            cur = next;
        }
        let system = DirectedSystem::chain(&maps)?;
        out.add_system("diagram", &system)?;
        return module_colimit(&system, out);
    };
    let name = ctx.pick("diagram")?.expect("input present");
    if input.diagram_of_reps(&name)? {
        let colim = rep_colimit(&input.rep_diagram(&name)?)?;
        out.add_rep("colimit", &colim.rep)?;
        for (i, s) in colim.structural.iter().enumerate() {
            out.add_morphism(&format!("structural.{i}.d"), &s.d)?;
            out.add_morphism(&format!("structural.{i}.s"), &s.s)?;
        }
        out.add_result(
            "colimit",
            fields(&[
                ("m1", join(colim.rep.m1().factors())),
                ("m2", join(colim.rep.m2().factors())),
            ]),
        )?;
        Ok((out.serialize(), 0))
    } else {
        module_colimit(&input.system(&name)?, out)
    }
}

fn module_colimit(system: &DirectedSystem, mut out: Manifest) -> Outcome {
    let colim = directed_colimit(system)?;
    out.add_module("colimit", &colim.object)?;
    for (i, s) in colim.structural.iter().enumerate() {
        out.add_morphism(&format!("structural.{i}"), s)?;
    }
    out.add_result("colimit", fields(&[("object", join(colim.object.factors()))]))?;
    Ok((out.serialize(), 0))
}

fn verify_suite(ctx: &Ctx) -> Outcome {
    let props = suite::properties();
    let report = suite::run(&props, ctx.cli.seed, ctx.cli.samples);
    let mut text = report.to_string();
    for (c, ok, checked) in report.criteria() {
        text.push_str(&format!(
            "criterion {c}: {} ({checked} samples)\n",
            if ok { "pass" } else { "fail" }
        ));
    }
    let code = if report.consistency_violation() {
        3
    } else if report.passed() {
        0
    } else {
        1
    };
    Ok((text, code))
}
