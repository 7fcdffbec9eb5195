//! JSON form of recognition results.
//!
//! A positive result is
//! `{"star_pcg": true, "ordering": [...], "weights": [[num, den], ...],
//! "dmin": [num, den], "dmax": [num, den]}` with weights in position order
//! and every rational reduced with a positive denominator. A negative result
//! is `{"star_pcg": false, "certificate": {"kind": ..., "details": ...}}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::{Permutation, VertexOrdering};
use crate::rational::{from_pair, to_pair, Rational};
use crate::recognize::RecognitionOutcome;
use crate::synthesis::StarPCR;

#[derive(Debug, Serialize, Deserialize)]
struct WitnessDoc {
    star_pcg: bool,
    ordering: Vec<usize>,
    weights: Vec<[String; 2]>,
    dmin: [String; 2],
    dmax: [String; 2],
}

pub fn witness_json(sigma: &VertexOrdering, pcr: &StarPCR) -> Value {
    let doc = WitnessDoc {
        star_pcg: true,
        ordering: sigma.as_slice().to_vec(),
        weights: pcr.weights.iter().map(to_pair).collect(),
        dmin: to_pair(&pcr.dmin),
        dmax: to_pair(&pcr.dmax),
    };
    serde_json::to_value(doc).expect("witness serializes")
}

pub fn outcome_json(outcome: &RecognitionOutcome) -> Value {
    match outcome {
        RecognitionOutcome::Yes(a) => witness_json(&a.ordering, &a.witness),
        RecognitionOutcome::No(r) => json!({
            "star_pcg": false,
            "certificate": {
                "kind": r.kind.as_str(),
                "details": r.details,
                "internal": r.internal,
            }
        }),
    }
}

fn rational(pair: &[String; 2], what: &str) -> Result<Rational> {
    let r = from_pair(&pair[0], &pair[1])
        .ok_or_else(|| Error::Witness(format!("{what} is not a rational: {pair:?}")))?;
    if to_pair(&r) != *pair {
        return Err(Error::Witness(format!(
            "{what} must be reduced with a positive denominator: {pair:?}"
        )));
    }
    Ok(r)
}

/// Reads a positive witness document.
pub fn parse_witness(text: &str) -> Result<(VertexOrdering, StarPCR)> {
    let doc: WitnessDoc = serde_json::from_str(text)?;
    if !doc.star_pcg {
        return Err(Error::Witness("document is not a positive witness".into()));
    }
    let sigma = Permutation::new(doc.ordering)
        .map_err(|e| Error::Witness(format!("ordering: {e}")))?;
    if doc.weights.len() != sigma.len() {
        return Err(Error::Witness(format!(
            "{} weights for {} vertices",
            doc.weights.len(),
            sigma.len()
        )));
    }
    let weights = doc
        .weights
        .iter()
        .enumerate()
        .map(|(i, w)| rational(w, &format!("weight {i}")))
        .collect::<Result<Vec<_>>>()?;
    let pcr = StarPCR {
        weights,
        dmin: rational(&doc.dmin, "dmin")?,
        dmax: rational(&doc.dmax, "dmax")?,
    };
    Ok((sigma, pcr))
}
