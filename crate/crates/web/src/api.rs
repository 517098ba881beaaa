//! The demo's operations as plain functions returning JSON text, so they can be
//! tested natively.

use chernwork::applications::parity_certificate;
use chernwork::combinatorics::partitions;
use chernwork::genus::{evaluate_genus, genus_h_lambda, GenusSpec, DEFAULT_KERNEL_ORDER};
use chernwork::hattori_stong::{b_polynomial, IntegralityChecker};
use chernwork::rational::{from_text, to_text};
use chernwork::{ChernVector, Error, IntegerPartition, PowerSeries, Result};
use serde_json::{json, Value};

/// Partitions above this weight make the page unresponsive.
pub const MAX_WEIGHT: u32 = 8;

fn check_weight(n: u32) -> Result<()> {
    if n > MAX_WEIGHT {
        return Err(Error::LimitExceeded {
            what: "weight",
            requested: n as usize,
            limit: MAX_WEIGHT as usize,
        });
    }
    Ok(())
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => json!({ "ok": true, "result": v }).to_string(),
        Err(e) => json!({ "ok": false, "error": e.to_string() }).to_string(),
    }
}

/// `b^(k)_λ` for every `k`.
pub fn b_table(partition: &str) -> String {
    respond((|| {
        let lambda: IntegerPartition = partition.parse()?;
        check_weight(lambda.weight())?;
        let poly = b_polynomial(&lambda)?;
        let rows: Vec<Value> = (1..=lambda.weight())
            .map(|k| json!({ "k": k, "value": to_text(&poly.coefficient(k)) }))
            .collect();
        Ok(json!({ "partition": lambda, "polynomial": poly.to_string(), "rows": rows }))
    })())
}

fn genus_from(name: &str, q_coeffs: &str) -> Result<GenusSpec> {
    match name {
        "signature" => Ok(GenusSpec::signature()),
        "todd" => Ok(GenusSpec::todd()),
        "custom" => {
            let coeffs = q_coeffs
                .split(',')
                .map(|c| from_text(c.trim()))
                .collect::<Result<Vec<_>>>()?;
            GenusSpec::custom("custom", PowerSeries::polynomial(&coeffs, DEFAULT_KERNEL_ORDER))
        }
        other => Err(Error::InvalidArgument(format!("unknown genus {other:?}"))),
    }
}

/// `h_λ` for every partition of `dim`.
pub fn genus_table(genus: &str, q_coeffs: &str, dim: u32) -> String {
    respond((|| {
        check_weight(dim)?;
        let g = genus_from(genus, q_coeffs)?;
        let rows = partitions(dim)
            .into_iter()
            .map(|lambda| Ok(json!({ "partition": lambda, "h": to_text(&genus_h_lambda(&g, &lambda)?) })))
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({ "genus": genus, "dim": dim, "rows": rows }))
    })())
}

/// Integrality verdict, signature, Todd genus and parity certificate of a Chern vector.
pub fn check_chern(dim: u32, chern: &str) -> String {
    respond((|| {
        check_weight(dim)?;
        let v = ChernVector::parse(dim, chern)?;
        let report = IntegralityChecker::default().check_realizable(&v)?;
        let parity = parity_certificate(&v)?;
        Ok(json!({
            "chern": v.to_string(),
            "realizable": report.realizable,
            "conditions_checked": report.conditions_checked,
            "violations": report.violations,
            "signature": to_text(&evaluate_genus(&GenusSpec::signature(), &v)?),
            "todd": to_text(&evaluate_genus(&GenusSpec::todd(), &v)?),
            "parity": parity.verdict,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn b_rows() {
        let v = parse(b_table("3"));
        assert_eq!(v["ok"], true);
        assert_eq!(v["result"]["rows"][1]["value"], "-3/2");
        assert_eq!(parse(b_table("3,x"))["ok"], false);
        assert_eq!(parse(b_table("9"))["ok"], false);
    }

    #[test]
    fn genus_rows() {
        let v = parse(genus_table("signature", "", 4));
        let rows = v["result"]["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().any(|r| r["partition"] == "(2,2)" && r["h"] == "1/15"));
        let v = parse(genus_table("custom", "1,1", 2));
        assert_eq!(v["ok"], true);
        assert_eq!(parse(genus_table("custom", "2,1", 2))["ok"], false);
        assert_eq!(parse(genus_table("elliptic", "", 2))["ok"], false);
    }

    #[test]
    fn chern_check() {
        let v = parse(check_chern(2, "(1,1)=9,(2)=3"));
        assert_eq!(v["result"]["realizable"], true);
        assert_eq!(v["result"]["signature"], "1/1");
        let v = parse(check_chern(2, "(1,1)=0,(2)=1"));
        assert_eq!(v["result"]["realizable"], false);
        assert_eq!(v["result"]["violations"][0]["value"], "1/12");
    }
}
