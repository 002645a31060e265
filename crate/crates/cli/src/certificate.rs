//! Packing certificate files.
//!
//! JSON with every rational serialized as a `p/q` string (`p` when
//! integral) so exactness survives the round trip. The parser re-derives
//! everything it can check: square count, the claimed total against the
//! recomputed sum, and full geometric verification.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use sqpack_core::rational::Rational;
use sqpack_core::{Packing, Provenance, Square};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CertificateDoc {
    schema_version: u32,
    n: u64,
    total: String,
    squares: Vec<SquareDoc>,
    #[serde(default)]
    provenance: Vec<Provenance>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SquareDoc {
    x: String,
    y: String,
    s: String,
}

pub fn to_json(p: &Packing) -> String {
    let doc = CertificateDoc {
        schema_version: SCHEMA_VERSION,
        n: p.count() as u64,
        total: p.total_side().to_string(),
        squares: p
            .squares()
            .iter()
            .map(|sq| SquareDoc {
                x: sq.x().to_string(),
                y: sq.y().to_string(),
                s: sq.side().to_string(),
            })
            .collect(),
        provenance: p.provenance().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("certificate serializes");
    text.push('\n');
    text
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|_| CliError::Invalid(format!("malformed rational {what}: {text:?}")))
}

/// Parse and run the structural checks (schema, rationals, count, claimed
/// total) but not geometric verification. `verify`-style consumers want the
/// full report; everything else should use [`from_json`].
pub fn parse_json(text: &str) -> Result<Packing, CliError> {
    let doc: CertificateDoc = serde_json::from_str(text)
        .map_err(|e| CliError::Invalid(format!("malformed certificate: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CliError::Invalid(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    if doc.n as usize != doc.squares.len() {
        return Err(CliError::Invalid(format!(
            "certificate claims n={} but lists {} squares",
            doc.n,
            doc.squares.len()
        )));
    }
    let mut squares = Vec::with_capacity(doc.squares.len());
    for (i, sq) in doc.squares.iter().enumerate() {
        let square = Square::new(
            parse_rational(&sq.x, &format!("x of square {i}"))?,
            parse_rational(&sq.y, &format!("y of square {i}"))?,
            parse_rational(&sq.s, &format!("s of square {i}"))?,
        )
        .map_err(|e| CliError::Invalid(format!("square {i}: {e}")))?;
        squares.push(square);
    }
    let claimed_total = parse_rational(&doc.total, "total")?;
    let packing = Packing::from_claimed_parts(squares, claimed_total, doc.provenance);
    if let Some(m) = packing.verify().total_mismatch {
        return Err(CliError::Invalid(format!(
            "certificate total {} does not match the recomputed sum {}",
            m.stored, m.recomputed
        )));
    }
    Ok(packing)
}

/// Parse plus the exact verification gate: invalid geometry is rejected
/// with the offending indices.
pub fn from_json(text: &str) -> Result<Packing, CliError> {
    let packing = parse_json(text)?;
    let report = packing.verify();
    if !report.is_valid() {
        return Err(CliError::Verification(report.to_string()));
    }
    Ok(packing)
}

pub fn write_certificate(p: &Packing, path: &Path) -> Result<(), CliError> {
    let report = p.verify();
    if !report.is_clean() {
        return Err(CliError::Verification(report.to_string()));
    }
    fs::write(path, to_json(p))?;
    Ok(())
}

pub fn read_certificate(path: &Path) -> Result<Packing, CliError> {
    let text = fs::read_to_string(path)?;
    from_json(&text)
}

/// Parse without the verification gate (for exhaustive reporting).
pub fn read_unverified(path: &Path) -> Result<Packing, CliError> {
    let text = fs::read_to_string(path)?;
    parse_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sqpack_core::constructions::{combine, grid};
    use sqpack_core::rational::rat_u;

    #[test]
    fn grid_round_trips_exactly() {
        let p = grid(2).unwrap();
        let text = to_json(&p);
        assert!(text.contains("\"1/2\""));
        assert!(text.contains("\"total\": \"2\""));
        let back = from_json(&text).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn combine_output_round_trips_with_provenance() {
        let p = combine(&grid(2).unwrap(), &grid(1).unwrap(), 2, 1, 3).unwrap();
        let back = from_json(&to_json(&p)).unwrap();
        assert_eq!(p, back);
        assert_eq!(back.provenance(), p.provenance());
        assert_eq!(back.total_side(), &rat_u(3));
    }

    #[test]
    fn total_mismatch_rejected() {
        let text = r#"{
            "schema_version": 1,
            "n": 1,
            "total": "3/2",
            "squares": [{"x": "0", "y": "0", "s": "1"}],
            "provenance": []
        }"#;
        let err = from_json(text).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("3/2"));
    }

    #[test]
    fn overlap_rejected_with_pair_indices() {
        let text = r#"{
            "schema_version": 1,
            "n": 2,
            "total": "5/4",
            "squares": [
                {"x": "0", "y": "0", "s": "3/4"},
                {"x": "1/2", "y": "1/2", "s": "1/2"}
            ],
            "provenance": []
        }"#;
        let err = from_json(text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("0 and 1 overlap"), "{err}");
    }

    #[test]
    fn malformed_rational_rejected() {
        for bad in ["0.5", "1/0", "one half", ""] {
            let text = format!(
                r#"{{"schema_version": 1, "n": 1, "total": "1",
                    "squares": [{{"x": "0", "y": "0", "s": {bad:?}}}],
                    "provenance": []}}"#
            );
            let err = from_json(&text).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{bad:?} should be invalid input");
        }
    }

    #[test]
    fn zero_side_square_rejected() {
        let text = r#"{
            "schema_version": 1,
            "n": 1,
            "total": "0",
            "squares": [{"x": "0", "y": "0", "s": "0"}],
            "provenance": []
        }"#;
        assert!(from_json(text).is_err());
    }

    #[test]
    fn count_mismatch_rejected() {
        let text = r#"{
            "schema_version": 1,
            "n": 3,
            "total": "1",
            "squares": [{"x": "0", "y": "0", "s": "1"}],
            "provenance": []
        }"#;
        let err = from_json(text).unwrap_err();
        assert!(err.to_string().contains("n=3"));
    }

    #[test]
    fn write_refuses_invalid_packing() {
        use sqpack_core::rational::rat;
        let bad = Packing::new(vec![
            Square::new(rat(0, 1), rat(0, 1), rat(3, 4)).unwrap(),
            Square::new(rat(1, 2), rat(1, 2), rat(1, 2)).unwrap(),
        ]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        let err = write_certificate(&bad, &path).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(!path.exists());
    }
}
