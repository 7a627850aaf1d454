//! Output shapes for JSON and the text rendering of axiom reports.

use faigle::faigle::{CapWitness, PrWitness};
use faigle::{AxiomReport, Congruence, ElemSet, FaigleGeometry, Lattice, Poset};
use serde::Serialize;

#[derive(Serialize)]
pub struct OrderJson {
    size: usize,
    covers: Vec<(usize, usize)>,
    labels: Vec<Option<String>>,
}

pub fn order(p: &Poset) -> OrderJson {
    OrderJson {
        size: p.len(),
        covers: p.covers(),
        labels: p.labels().to_vec(),
    }
}

pub fn lattice(l: &Lattice) -> OrderJson {
    order(l.order())
}

#[derive(Serialize)]
pub struct GeometryJson {
    ground: OrderJson,
    flats: Vec<ElemSet>,
}

pub fn geometry(g: &FaigleGeometry) -> GeometryJson {
    GeometryJson {
        ground: order(g.ground()),
        flats: g.flats().to_vec(),
    }
}

pub fn congruences(list: &[Congruence]) -> Vec<Vec<ElemSet>> {
    list.iter().map(|c| c.blocks()).collect()
}

pub fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn set(g: &FaigleGeometry, x: &ElemSet) -> String {
    let names: Vec<String> = x.iter().map(|i| g.ground().name(i)).collect();
    format!("{{{}}}", names.join(", "))
}

/// One line per axiom, with a witness for each failure.
pub fn axiom_report_text(g: &FaigleGeometry, r: &AxiomReport) -> String {
    let name = |u: usize| g.ground().name(u);
    let verdict = |ok: bool| if ok { "holds" } else { "fails" };
    let mut out = String::new();
    let cap = match r.cap_witness() {
        None => String::new(),
        Some(CapWitness::GroundMissing) => ": the ground set is not a flat".into(),
        Some(CapWitness::Intersection { x, y }) => {
            format!(": {} ∩ {} is not a flat", set(g, x), set(g, y))
        }
    };
    out.push_str(&format!("F∩  {}{cap}\n", verdict(r.holds_cap())));
    let down = r.down_witness().map_or(String::new(), |w| {
        format!(
            ": {} contains {} but not {}",
            set(g, &w.flat),
            name(w.member),
            name(w.below)
        )
    });
    out.push_str(&format!("F↓  {}{down}\n", verdict(r.holds_down())));
    let pr = match r.pr_witness() {
        None => String::new(),
        Some(PrWitness::EmptyMissing) => ": ∅ is not a flat".into(),
        Some(PrWitness::PrincipalMissing(u)) => format!(": ↓{} is not a flat", name(*u)),
        Some(PrWitness::StrictPrincipalMissing(u)) => format!(": ⇓{} is not a flat", name(*u)),
    };
    out.push_str(&format!("Pr  {}{pr}\n", verdict(r.holds_pr())));
    let cp = r.cp_witness().map_or(String::new(), |w| {
        format!(
            ": u = {}, X = {} has no covering flat containing u",
            name(w.u),
            set(g, &w.x)
        )
    });
    out.push_str(&format!("CP  {}{cp}\n", verdict(r.holds_cp())));
    let fep = r.fep_witness().map_or(String::new(), |w| {
        format!(": u = {}, v = {}, S = {}", name(w.u), name(w.v), set(g, &w.s))
    });
    out.push_str(&format!("FEP {}{fep}\n", verdict(r.holds_fep())));
    out.push_str(&format!(
        "faigle geometry: {}\n",
        if r.is_faigle_geometry() { "yes" } else { "no" }
    ));
    out
}
