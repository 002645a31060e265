//! Ledger tables: aligned text for humans, JSON for machines. Exact values
//! are always the `p/q` / `sqrt(n)` strings; the decimal columns are hints.

use clap::ValueEnum;
use serde::Serialize;

use sqpack_core::rational::decimal_hint;
use sqpack_core::{Derivation, Ledger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Table,
    Json,
}

#[derive(Serialize)]
struct EntryDoc {
    n: u64,
    lower: String,
    lower_decimal: f64,
    upper: String,
    upper_decimal: f64,
    derivation: Derivation,
    trace_len: u64,
}

#[derive(Serialize)]
struct EpsilonDoc {
    k: u64,
    lb: String,
    lb_decimal: f64,
    ub: String,
    ub_decimal: f64,
}

#[derive(Serialize)]
struct LedgerDoc {
    max_n: u64,
    b_cap: u64,
    entries: Vec<EntryDoc>,
    epsilon: Vec<EpsilonDoc>,
}

fn epsilon_rows(ledger: &Ledger) -> Vec<EpsilonDoc> {
    let mut rows = Vec::new();
    let mut k = 1u64;
    while k * k < ledger.max_n() {
        if let Ok(eps) = ledger.epsilon_interval(k) {
            rows.push(EpsilonDoc {
                k,
                lb: eps.lb().to_string(),
                lb_decimal: decimal_hint(eps.lb(), 9).parse().unwrap_or(f64::NAN),
                ub: eps.ub().to_string(),
                ub_decimal: eps.ub().to_f64(),
            });
        }
        k += 1;
    }
    rows
}

pub fn ledger_table(ledger: &Ledger, format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let doc = LedgerDoc {
                max_n: ledger.max_n(),
                b_cap: ledger.b_cap(),
                entries: (1..=ledger.max_n())
                    .filter_map(|n| {
                        let lb = ledger.lower(n)?;
                        let ub = ledger.upper(n);
                        Some(EntryDoc {
                            n,
                            lower: lb.value().to_string(),
                            lower_decimal: decimal_hint(lb.value(), 9)
                                .parse()
                                .unwrap_or(f64::NAN),
                            upper: ub.to_string(),
                            upper_decimal: ub.surd().to_f64(),
                            derivation: lb.derivation().clone(),
                            trace_len: ledger.trace_len(n).unwrap_or(0),
                        })
                    })
                    .collect(),
                epsilon: epsilon_rows(ledger),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("ledger serializes");
            text.push('\n');
            text
        }
        TableFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "{:<6} {:<12} {:<11} {:<11} {:<11} {}\n",
                "n", "lower", "~lower", "upper", "~upper", "derivation"
            ));
            for n in 1..=ledger.max_n() {
                let Some(lb) = ledger.lower(n) else { continue };
                let ub = ledger.upper(n);
                out.push_str(&format!(
                    "{:<6} {:<12} {:<11} {:<11} {:<11.6} {}\n",
                    n,
                    lb.value().to_string(),
                    decimal_hint(lb.value(), 6),
                    ub.to_string(),
                    ub.surd().to_f64(),
                    lb.derivation(),
                ));
            }
            let eps = epsilon_rows(ledger);
            if !eps.is_empty() {
                out.push_str(&format!(
                    "\n{:<6} {:<12} {:<16} {}\n",
                    "k", "eps lb", "eps ub", "~eps ub"
                ));
                for row in eps {
                    out.push_str(&format!(
                        "{:<6} {:<12} {:<16} {:.6}\n",
                        row.k, row.lb, row.ub, row.ub_decimal
                    ));
                }
            }
            out
        }
    }
}
