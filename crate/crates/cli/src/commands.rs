use std::fs;

use brieskorn::{
    ch_report, classify_index, combine, enumerate_orbit_types, full_homology, iterated_sphere_sum,
    kappa, maslov_crosscheck, maslov_orbit_space, orbit_space_rational_homology,
    special_sphere_check, special_sphere_exponents, CHReport, ExponentVector, GeneratorCounts, Nat,
    Window,
};

use crate::envelope::{
    Body, ExoticPayload, Input, OrbitEntry, OrbitsPayload, OutputEnvelope, SumStep, SCHEMA_VERSION,
};
use crate::{exit, ChArgs, CliError, ExoticArgs, SumArgs};

/// Widest default `ch` window, in degrees.
const DEFAULT_SPAN_CAP: i64 = 200;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub envelope: OutputEnvelope,
    pub code: i32,
}

impl Outcome {
    fn ok(envelope: OutputEnvelope) -> Self {
        Outcome {
            envelope,
            code: exit::OK,
        }
    }
}

fn exponents(xs: &[u64]) -> Result<ExponentVector, CliError> {
    Ok(ExponentVector::new(xs.to_vec())?)
}

fn echo(xs: &[u64]) -> Input {
    Input {
        exponents: Some(xs.to_vec()),
        ..Input::default()
    }
}

pub fn cmd_homology(xs: &[u64]) -> Result<Outcome, CliError> {
    let a = exponents(xs)?;
    let report = full_homology(&a)?;
    let mut env = OutputEnvelope::new(Body::Homology(report.clone()), echo(xs));
    if let Some(note) = &report.note {
        env.diagnostics.push(note.clone());
    }
    Ok(Outcome::ok(env))
}

pub fn cmd_orbits(xs: &[u64]) -> Result<Outcome, CliError> {
    let a = exponents(xs)?;
    let character = classify_index(&a);
    let l = a.lcm();
    let mut types = Vec::new();
    for t in enumerate_orbit_types(&a) {
        let h = orbit_space_rational_homology(&a, t.support)?;
        types.push(OrbitEntry {
            kappa: kappa(&a, t.support)?,
            orbit_space_ranks: h.ranks,
            period_multiplier: Nat(&l.0 / &t.m.0),
            orbit_type: t,
        });
    }
    let mut env = OutputEnvelope::new(
        Body::Orbits(OrbitsPayload {
            exponents: a,
            character: character.clone(),
            lcm: l,
            types,
        }),
        echo(xs),
    );
    if character.is_degenerate() {
        env.diagnostics
            .push("character Degenerate: contact homology is not defined for this form".into());
    }
    Ok(Outcome::ok(env))
}

/// Two periods up from the lowest degree (index-positive) or down from the
/// highest (index-negative).
fn default_window(probe: &CHReport) -> Result<Window, CliError> {
    let ext = probe
        .extremal_degree
        .to_i64()
        .ok_or_else(|| CliError::Input("extremal degree out of range; pass --window".into()))?;
    let span = probe
        .period_shift
        .to_i64()
        .map(|d| d.saturating_abs().saturating_mul(2))
        .unwrap_or(i64::MAX)
        .clamp(2, DEFAULT_SPAN_CAP);
    let w = if probe.character.is_positive() {
        Window::new(ext, ext.saturating_add(span))
    } else {
        Window::new(ext.saturating_sub(span), ext)
    };
    Ok(w?)
}

pub fn cmd_ch(args: &ChArgs) -> Result<Outcome, CliError> {
    let a = exponents(&args.exponents)?;
    let mut diagnostics = Vec::new();
    let window = match args.window {
        Some(w) => w,
        None => {
            let w = default_window(&ch_report(&a, Window::new(0, 0)?)?)?;
            diagnostics.push(format!("window defaulted to {w}"));
            w
        }
    };
    let mut report = ch_report(&a, window)?;

    if args.crosscheck {
        let types = enumerate_orbit_types(&a);
        let mut checked = 0usize;
        for c in &report.contributions {
            let t = types
                .iter()
                .find(|t| t.m == c.m)
                .ok_or_else(|| CliError::Crosscheck(format!("no orbit type with m = {}", c.m)))?;
            let mu = maslov_orbit_space(&a, t, c.multiplier)?;
            let cross = maslov_crosscheck(&a, t, c.multiplier)?;
            if mu != cross {
                return Err(CliError::Crosscheck(format!(
                    "m = {}, N = {}: orbit-space index {mu}, unitary index {cross}",
                    c.m, c.multiplier
                )));
            }
            checked += 1;
        }
        diagnostics.push(format!("crosscheck: {checked} contributions agree"));
    }
    if !args.provenance {
        report.contributions.clear();
    }

    let code = if report.well_defined {
        exit::OK
    } else {
        diagnostics.push("generators in degree 0: contact homology is not well defined".into());
        exit::NOT_WELL_DEFINED
    };
    let input = Input {
        window: Some(window),
        ..echo(&args.exponents)
    };
    let mut env = OutputEnvelope::new(Body::Ch(report), input);
    env.diagnostics = diagnostics;
    Ok(Outcome {
        envelope: env,
        code,
    })
}

fn read_counts(path: &std::path::Path) -> Result<GeneratorCounts, CliError> {
    let file_err = |message: String| CliError::File {
        path: path.display().to_string(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| file_err(e.to_string()))?;
    let env: OutputEnvelope =
        serde_json::from_str(&text).map_err(|e| file_err(format!("not a report envelope: {e}")))?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(file_err(format!(
            "schema version {:?}, expected {SCHEMA_VERSION:?}",
            env.schema_version
        )));
    }
    match env.body {
        Body::Sum(counts) => Ok(counts),
        Body::Ch(report) => Ok(GeneratorCounts::from_report(&report)),
        _ => Err(file_err(format!(
            "{} envelope carries no generator counts",
            env.command()
        ))),
    }
}

pub fn cmd_sum(args: &SumArgs) -> Result<Outcome, CliError> {
    let mut inputs = Vec::new();
    for path in &args.files {
        let counts = read_counts(path)?;
        if counts.half_dim_n != args.beta_n {
            return Err(CliError::File {
                path: path.display().to_string(),
                message: format!("n = {}, but --beta-n {}", counts.half_dim_n, args.beta_n),
            });
        }
        inputs.push(counts);
    }
    let cutoff = args
        .cutoff
        .unwrap_or_else(|| inputs.iter().map(|c| c.cutoff).min().unwrap_or(0));
    let mut acc = inputs[0].truncate(cutoff);
    for c in &inputs[1..] {
        acc = combine(&acc, &c.truncate(cutoff))?;
    }

    let mut env = OutputEnvelope::new(
        Body::Sum(acc),
        Input {
            files: Some(args.files.iter().map(|p| p.display().to_string()).collect()),
            beta_n: Some(args.beta_n),
            cutoff: args.cutoff,
            ..Input::default()
        },
    );
    if inputs.iter().any(|c| c.cutoff < cutoff) {
        env.diagnostics
            .push("an input cutoff is below --cutoff; result is valid only up to it".into());
    }
    Ok(Outcome::ok(env))
}

pub fn cmd_exotic(args: &ExoticArgs) -> Result<Outcome, CliError> {
    if args.copies == 0 {
        return Err(brieskorn::Error::InvalidCopies.into());
    }
    let a = special_sphere_exponents(&args.primes)?;
    let low = 2 * a.n() as i64 - 4;
    let window = match args.window {
        Some(w) => w,
        None => Window::new(low, low + 2)?,
    };
    let report = ch_report(&a, window)?;
    let verdict = special_sphere_check(&args.primes, &report)?;
    let sphere = GeneratorCounts::from_report(&report);

    let mut sums = Vec::new();
    for r in 1..=args.copies {
        let counts = iterated_sphere_sum(&sphere, r)?;
        sums.push(SumStep {
            copies: r,
            generators_2n_minus_4: counts.count(low),
            generators_2n_minus_3: counts.count(low + 1),
            counts,
        });
    }
    let strictly_increasing = sums
        .windows(2)
        .all(|w| w[0].generators_2n_minus_4 < w[1].generators_2n_minus_4);

    let mut diagnostics = Vec::new();
    let code = if verdict.passed {
        exit::OK
    } else {
        diagnostics.push(format!(
            "special-sphere check failed: {}",
            verdict.failing().join(", ")
        ));
        exit::CHECK_FAILED
    };
    let input = Input {
        primes: Some(args.primes.clone()),
        copies: Some(args.copies),
        window: Some(window),
        ..Input::default()
    };
    let mut env = OutputEnvelope::new(
        Body::Exotic(ExoticPayload {
            exponents: a,
            verdict,
            sphere,
            sums,
            strictly_increasing,
        }),
        input,
    );
    env.diagnostics = diagnostics;
    Ok(Outcome {
        envelope: env,
        code,
    })
}
