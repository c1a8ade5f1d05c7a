use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use brieskorn::{
    CHReport, ExponentVector, GeneratorCounts, HomologyReport, IndexCharacter, Nat, OrbitType,
    SpecialSphereVerdict, Window,
};

pub const SCHEMA_VERSION: &str = "1";

/// Top-level JSON document written by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub schema_version: String,
    #[serde(flatten)]
    pub body: Body,
    pub input: Input,
    pub diagnostics: Vec<String>,
}

impl OutputEnvelope {
    pub fn new(body: Body, input: Input) -> Self {
        OutputEnvelope {
            schema_version: SCHEMA_VERSION.to_string(),
            body,
            input,
            diagnostics: Vec::new(),
        }
    }

    pub fn command(&self) -> &'static str {
        match self.body {
            Body::Homology(_) => "homology",
            Body::Orbits(_) => "orbits",
            Body::Ch(_) => "ch",
            Body::Sum(_) => "sum",
            Body::Exotic(_) => "exotic",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", content = "payload", rename_all = "lowercase")]
pub enum Body {
    Homology(HomologyReport),
    Orbits(OrbitsPayload),
    Ch(CHReport),
    Sum(GeneratorCounts),
    Exotic(ExoticPayload),
}

impl Body {
    pub fn from_parts(command: &str, payload: serde_json::Value) -> serde_json::Result<Body> {
        use serde_json::from_value;
        Ok(match command {
            "homology" => Body::Homology(from_value(payload)?),
            "orbits" => Body::Orbits(from_value(payload)?),
            "ch" => Body::Ch(from_value(payload)?),
            "sum" => Body::Sum(from_value(payload)?),
            "exotic" => Body::Exotic(from_value(payload)?),
            other => {
                return Err(serde_json::Error::custom(format!(
                    "unknown command {other:?}"
                )))
            }
        })
    }
}

// Derived deserialization of a flattened tagged enum buffers the payload and
// then rejects the integer keys of degree maps, so go through a JSON value.
#[derive(Deserialize)]
struct RawEnvelope {
    schema_version: String,
    command: String,
    payload: serde_json::Value,
    input: Input,
    diagnostics: Vec<String>,
}

impl<'de> Deserialize<'de> for OutputEnvelope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawEnvelope::deserialize(deserializer)?;
        let body = Body::from_parts(&raw.command, raw.payload).map_err(D::Error::custom)?;
        Ok(OutputEnvelope {
            schema_version: raw.schema_version,
            body,
            input: raw.input,
            diagnostics: raw.diagnostics,
        })
    }
}

/// Echo of the arguments that produced the envelope.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub files: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitsPayload {
    pub exponents: ExponentVector,
    pub character: IndexCharacter,
    pub lcm: Nat,
    pub types: Vec<OrbitEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitEntry {
    #[serde(flatten)]
    pub orbit_type: OrbitType,
    pub kappa: Nat,
    /// Rational Betti numbers of the orbit space, degree 0 upward.
    pub orbit_space_ranks: Vec<Nat>,
    /// Iterates after which the type's degrees repeat.
    pub period_multiplier: Nat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExoticPayload {
    pub exponents: ExponentVector,
    pub verdict: SpecialSphereVerdict,
    pub sphere: GeneratorCounts,
    pub sums: Vec<SumStep>,
    /// Counts in degree `2n − 4` grow strictly with the number of copies.
    pub strictly_increasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumStep {
    pub copies: u64,
    /// At least this many generators in degree `2n − 4`.
    pub generators_2n_minus_4: Nat,
    pub generators_2n_minus_3: Nat,
    pub counts: GeneratorCounts,
}
