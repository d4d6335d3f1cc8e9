use std::collections::BTreeMap;

use super::{commutator, concat, inverse, power, GroupPresentation, Letter, PresentationError, Word};
use crate::link::LinkDiagram;

/// Meridian and 0-framed longitude word of each component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralData {
    pub meridians: Vec<Word>,
    pub longitudes: Vec<Word>,
}

/// Hurewicz images: generator `g` maps to the exponent tuple `images[g]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeridianMap {
    pub images: Vec<Vec<i64>>,
}

impl MeridianMap {
    pub fn rank(&self) -> usize {
        self.images.first().map_or(0, |v| v.len())
    }

    /// Image of a word (sum of letter images).
    pub fn word_image(&self, w: &[Letter]) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        for l in w {
            for (a, b) in v.iter_mut().zip(&self.images[l.gen]) {
                *a += l.exponent() * b;
            }
        }
        v
    }
}

#[derive(Debug, Clone)]
pub struct Wirtinger {
    pub presentation: GroupPresentation,
    pub peripheral: PeripheralData,
    pub meridian_map: MeridianMap,
    /// Component of each generator.
    pub component: Vec<usize>,
}

/// Wirtinger arcs: edges joined through over-crossings. Returns the arc of
/// each edge label, numbered by first appearance along the components.
fn arcs(d: &LinkDiagram) -> (BTreeMap<u32, usize>, Vec<usize>) {
    let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
    fn find(p: &mut BTreeMap<u32, u32>, x: u32) -> u32 {
        let up = *p.get(&x).unwrap_or(&x);
        if up == x {
            return x;
        }
        let r = find(p, up);
        p.insert(x, r);
        r
    }
    for c in d.crossings() {
        let (a, b) = (find(&mut parent, c.over_in()), find(&mut parent, c.over_out()));
        if a != b {
            parent.insert(a, b);
        }
    }
    let mut root_index: BTreeMap<u32, usize> = BTreeMap::new();
    let mut arc_of = BTreeMap::new();
    let mut comp_of_arc = Vec::new();
    for (ci, comp) in d.components().iter().enumerate() {
        for &e in comp {
            let r = find(&mut parent, e);
            let next = root_index.len();
            let idx = *root_index.entry(r).or_insert_with(|| {
                comp_of_arc.push(ci);
                next
            });
            arc_of.insert(e, idx);
        }
    }
    (arc_of, comp_of_arc)
}

/// Wirtinger presentation: one generator per arc (`x1, x2, …`), one relator
/// `w^ε x_out w^-ε x_in^-1` per crossing of sign `ε` with over-arc `w`.
/// The meridian of component `i` is the arc containing its first edge.
pub fn wirtinger(d: &LinkDiagram) -> Wirtinger {
    let (arc_of, comp_of_arc) = arcs(d);
    let n = comp_of_arc.len();
    let mu = d.num_components();
    let mut rels = Vec::new();
    for c in d.crossings() {
        let w = arc_of[&c.over_in()];
        let a = arc_of[&c.under_in()];
        let b = arc_of[&c.under_out()];
        let eps = i64::from(c.sign);
        rels.push(concat(&[&power(w, eps), &power(b, 1), &power(w, -eps), &power(a, -1)]));
    }
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    let presentation = GroupPresentation::new(names, rels).expect("arcs are declared generators");
    let meridians = d.components().iter().map(|comp| vec![Letter::new(arc_of[&comp[0]])]).collect();
    let longitudes = (0..mu).map(|i| longitude_with(d, &arc_of, i)).collect();
    let images = comp_of_arc
        .iter()
        .map(|&c| {
            let mut v = vec![0; mu];
            v[c] = 1;
            v
        })
        .collect();
    Wirtinger {
        presentation,
        peripheral: PeripheralData { meridians, longitudes },
        meridian_map: MeridianMap { images },
        component: comp_of_arc,
    }
}

fn longitude_with(d: &LinkDiagram, arc_of: &BTreeMap<u32, usize>, i: usize) -> Word {
    let comp = &d.components()[i];
    let mut w: Word = Vec::new();
    for &e in comp {
        let Some(x) = d.head(e) else { continue };
        let c = d.crossings()[x];
        if c.under_in() == e {
            w.extend(power(arc_of[&c.over_in()], i64::from(c.sign)));
        }
    }
    let m = arc_of[&comp[0]];
    w.extend(power(m, -d.self_writhe(i)));
    concat(&[&w])
}

/// 0-framed longitude of component `i`: the over-arcs passed under while
/// walking the component from its first edge, with crossing signs, followed
/// by the meridian to the power minus the self-writhe.
pub fn longitude(d: &LinkDiagram, i: usize) -> Word {
    let (arc_of, _) = arcs(d);
    longitude_with(d, &arc_of, i)
}

/// Presentation of `π₁(M_L)` together with the words used by cover searches.
#[derive(Debug, Clone)]
pub struct MlPresentation {
    pub presentation: GroupPresentation,
    pub meridians: [Word; 2],
    /// Stable letter of the second boundary identification.
    pub stable: Word,
}

/// `π₁(M_L)` for a 2-component link with linking number 1: `X_L` glued to the
/// Hopf link exterior `T² × I` along both boundary tori. With `a`, `b` the
/// Hopf meridians, the identifications are `μ₁ = a`, `λ₁ = b` on the first
/// torus and `μ₂ = s b s⁻¹`, `λ₂ = s a s⁻¹` on the second, where the stable
/// letter `s` records that both tori bound the same product region. `a` and
/// `b` are then eliminated.
pub fn glue_ml(w: &Wirtinger, linking_number: i64) -> Result<MlPresentation, PresentationError> {
    let mu = w.peripheral.meridians.len();
    if mu != 2 {
        return Err(PresentationError::Precondition(format!("M_L needs a 2-component link, got {mu} components")));
    }
    if linking_number != 1 {
        return Err(PresentationError::Precondition(format!(
            "M_L needs linking number 1, got {linking_number}"
        )));
    }
    let p = &w.presentation;
    let n = p.num_generators();
    let s = vec![Letter::new(n)];
    let (m1, m2) = (&w.peripheral.meridians[0], &w.peripheral.meridians[1]);
    let (l1, l2) = (&w.peripheral.longitudes[0], &w.peripheral.longitudes[1]);
    // a = μ₁, b = λ₁
    let mut rels: Vec<Word> = p.relators().to_vec();
    rels.push(commutator(m1, l1));
    rels.push(concat(&[&s, l1, &inverse(&s), &inverse(m2)]));
    rels.push(concat(&[&s, m1, &inverse(&s), &inverse(l2)]));
    let mut names = p.generators().to_vec();
    names.push("s".into());
    let presentation = GroupPresentation::new(names, rels)?;
    Ok(MlPresentation { presentation, meridians: [m1.clone(), m2.clone()], stable: s })
}
