use serde::Serialize;

use super::ring::QTheoryRing;
use crate::character::QDegree;

#[derive(Clone, Debug, Serialize)]
pub struct TateComponent {
    pub sigma: Vec<Vec<usize>>,
    pub orbit_rep: usize,
    pub symbols: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TateExport {
    pub n: usize,
    pub components: Vec<TateComponent>,
}

/// `q_1^{k_1/l_1}⋯q_n^{k_n/l_n}[χj]`, omitting zero exponents.
pub fn tate_symbol(q: &QDegree, character: usize) -> String {
    let n = q.len();
    let mut s = String::new();
    for (i, r) in q.fractions().iter().enumerate() {
        if *r.numer() == 0 {
            continue;
        }
        let var = if n == 1 {
            "q".to_string()
        } else {
            format!("q{}", i + 1)
        };
        s.push_str(&format!("{var}^{{{}/{}}}", r.numer(), r.denom()));
    }
    s.push_str(&format!("[χ{character}]"));
    s
}

/// The fractional-degree basis data of every component, as formal symbols.
pub fn tate_export(ring: &QTheoryRing) -> TateExport {
    TateExport {
        n: ring.n(),
        components: ring
            .components()
            .iter()
            .enumerate()
            .map(|(c, comp)| TateComponent {
                sigma: comp.sigma.images(),
                orbit_rep: comp.orbit_rep,
                symbols: ring
                    .module(c)
                    .basis()
                    .iter()
                    .map(|b| tate_symbol(&b.q_degree, b.character_index))
                    .collect(),
            })
            .collect(),
    }
}
