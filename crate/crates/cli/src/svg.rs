//! Deterministic SVG rendering of packings.
//!
//! Same packing in, byte-identical SVG out: coordinates are produced by
//! exact integer long division of the rationals (never via floats), squares
//! are emitted in packing order, and fills are keyed by the rank of the
//! side length so substituted blocks stand out from filler cells.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sqpack_core::rational::{decimal_hint, rat_u, Rational};
use sqpack_core::Packing;

use crate::CliError;

const CANVAS: i64 = 1000;
const MARGIN: i64 = 20;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#edc948", "#76b7b2", "#9c755f",
];

fn px(value: &Rational) -> String {
    decimal_hint(&(value * rat_u(CANVAS as u64)), 3)
}

pub fn render_svg(p: &Packing) -> String {
    // side lengths ranked largest-first pick the fill color
    let mut side_rank: BTreeMap<Rational, usize> = BTreeMap::new();
    for sq in p.squares() {
        side_rank.entry(sq.side().clone()).or_insert(0);
    }
    let ranked: Vec<Rational> = side_rank.keys().rev().cloned().collect();
    for (rank, side) in ranked.iter().enumerate() {
        side_rank.insert(side.clone(), rank);
    }

    let total = CANVAS + 2 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {total} {total}\" width=\"520\" height=\"520\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"2\"/>"
    );
    for sq in p.squares() {
        // SVG y runs downward; flip so the packing's y grows upward
        let y_top = rat_u(1) - sq.top();
        let color = PALETTE[side_rank[sq.side()] % PALETTE.len()];
        let _ = writeln!(
            out,
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{w}\" fill=\"{color}\" fill-opacity=\"0.85\" stroke=\"#1a1a1a\" stroke-width=\"1\" transform=\"translate({MARGIN} {MARGIN})\"><title>s = {side} (~{dec})</title></rect>",
            x = px(sq.x()),
            y = px(&y_top),
            w = px(sq.side()),
            side = sq.side(),
            dec = decimal_hint(sq.side(), 6),
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

pub fn write_svg(p: &Packing, path: &Path) -> Result<(), CliError> {
    let report = p.verify();
    if !report.is_clean() {
        return Err(CliError::Verification(report.to_string()));
    }
    fs::write(path, render_svg(p))?;
    Ok(())
}
