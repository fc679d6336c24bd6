//! Catalog of functions and families: exact evaluation, analytic gauges,
//! oscillation oracles and witnesses.

mod check;
mod family;
mod func;
mod gauge;
mod power;
mod witness;

pub use check::{check_gauge, GaugeCheck, PairSampler};
pub use family::{FamilySpec, GapDecision, GapSup, Member, OscBound, Region, Target};
pub use func::{Exceptional, FuncSpec, Lipschitz, Measurability, PiecewiseAffine, Regularity};
pub use gauge::{func_delta, n_eps, normalize_gauges, shrink_gauges, GaugeFamily};
pub use power::{power_exceeds, power_sup, PowerDecision, PowerSup};
pub use witness::{dense_pair_witness, osc_witness, DensePairWitness, OscWitness};

use serde::Serialize;

/// One row of the catalog listing.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: &'static str,
    pub space: String,
    pub class: &'static str,
    pub measurability: &'static str,
}

/// Built-in entries; parametrised ids such as `step@c` are shown with a sample parameter.
pub fn list_catalog() -> Vec<CatalogEntry> {
    let funcs = ["lip@1", "lip@2", "step@1/2", "pow@3", "pwa-sample", "dirichlet-quad", "dirichlet-cantor", "nonmeas-oracle"];
    let mut out: Vec<CatalogEntry> = funcs
        .iter()
        .map(|id| {
            let f = FuncSpec::parse_id(id).expect("built-in id");
            CatalogEntry {
                id: f.id(),
                kind: "function",
                space: f.space().to_string(),
                class: match f.regularity() {
                    Regularity::Continuous => "continuous",
                    Regularity::Baire1 => "Baire1",
                    Regularity::NotBaire1 => "notBaire1",
                },
                measurability: match f.measurability() {
                    Measurability::BaireMeasurable => "BaireMeasurable",
                    Measurability::AdversarialOracle => "adversarialOracle",
                },
            }
        })
        .collect();
    for id in ["power-family", "step-family", "finite:step@1/2|lip@1"] {
        let f = FamilySpec::parse_id(id).expect("built-in id");
        out.push(CatalogEntry {
            id: f.id(),
            kind: "family",
            space: f.space().to_string(),
            class: if f.is_equi_baire1() { "equiBaire1" } else { "notEquiBaire1" },
            measurability: "BaireMeasurable",
        });
    }
    out
}
