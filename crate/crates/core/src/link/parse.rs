use std::collections::BTreeMap;

use super::{Crossing, LinkDiagram, LinkParseError};

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while self.s.get(self.pos).map_or(false, |c| c.is_ascii_whitespace() || *c == b',') {
            self.pos += 1;
        }
    }

    fn inner_ws(&mut self) {
        while self.s.get(self.pos).map_or(false, |c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<u32, LinkParseError> {
        self.inner_ws();
        let start = self.pos;
        while self.s.get(self.pos).map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(LinkParseError::new(start, "expected a positive integer label"));
        }
        let v: u32 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| LinkParseError::new(start, "label too large"))?;
        if v == 0 {
            return Err(LinkParseError::new(start, "labels must be positive"));
        }
        Ok(v)
    }

    /// `[n, n, …]` after the token letter.
    fn bracket(&mut self) -> Result<Vec<u32>, LinkParseError> {
        self.inner_ws();
        if self.s.get(self.pos) != Some(&b'[') {
            return Err(LinkParseError::new(self.pos, "expected '['"));
        }
        self.pos += 1;
        let mut out = Vec::new();
        loop {
            self.inner_ws();
            if self.s.get(self.pos) == Some(&b']') {
                self.pos += 1;
                return Ok(out);
            }
            if !out.is_empty() {
                if self.s.get(self.pos) != Some(&b',') {
                    return Err(LinkParseError::new(self.pos, "expected ',' or ']'"));
                }
                self.pos += 1;
            }
            out.push(self.number()?);
        }
    }
}

pub(super) fn parse_pd(text: &str) -> Result<LinkDiagram, LinkParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(LinkParseError::new(0, "empty PD"));
    }
    if let Some(rest) = trimmed.strip_prefix("UNKNOT") {
        let at = text.len() - rest.len();
        let n: u32 = rest
            .trim()
            .parse()
            .map_err(|_| LinkParseError::new(at, "UNKNOT needs a positive component count"))?;
        if n == 0 {
            return Err(LinkParseError::new(at, "UNKNOT needs a positive component count"));
        }
        return build(&[], &(1..=n).collect::<Vec<_>>(), &[]);
    }
    let mut sc = Scanner { s: text.as_bytes(), pos: 0 };
    let mut crossings = Vec::new();
    let mut positions = Vec::new();
    let mut loops = Vec::new();
    loop {
        sc.skip_ws();
        let Some(&c) = sc.s.get(sc.pos) else { break };
        let start = sc.pos;
        sc.pos += 1;
        match c {
            b'X' => {
                let labels = sc.bracket()?;
                if labels.len() != 4 {
                    return Err(LinkParseError::new(start, "crossing needs 4 arcs"));
                }
                crossings.push([labels[0], labels[1], labels[2], labels[3]]);
                positions.push(start);
            }
            b'O' => {
                let labels = sc.bracket()?;
                if labels.len() != 1 {
                    return Err(LinkParseError::new(start, "O[c] takes one label"));
                }
                loops.push(labels[0]);
            }
            _ => return Err(LinkParseError::new(start, "expected X[a,b,c,d] or O[c]")),
        }
    }
    build(&crossings, &loops, &positions)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Dir {
    Unknown,
    DtoB,
    BtoD,
}

/// Validate crossings and free loops, orient every edge, and order components.
/// `positions` gives the byte offset of each crossing token for error reports.
pub(super) fn build(raw: &[[u32; 4]], loops: &[u32], positions: &[usize]) -> Result<LinkDiagram, LinkParseError> {
    let pos_of = |x: usize| positions.get(x).copied().unwrap_or(0);
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, c) in raw.iter().enumerate() {
        for (k, &l) in c.iter().enumerate() {
            occ.entry(l).or_default().push((x, k));
        }
    }
    for (&l, o) in &occ {
        if o.len() != 2 {
            let at = pos_of(o[o.len().min(3) - 1].0);
            return Err(LinkParseError::new(at, format!("arc {l} appears {} times, expected 2", o.len())));
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for &l in loops {
        if occ.contains_key(&l) || !seen.insert(l) {
            return Err(LinkParseError::new(0, format!("loop label {l} is already used")));
        }
    }

    // Orientation propagation. Role of an occurrence: Some(true) = edge ends
    // here, Some(false) = edge starts here, None = over strand not yet oriented.
    let mut dir = vec![Dir::Unknown; raw.len()];
    let role = |dir: &[Dir], x: usize, k: usize| -> Option<bool> {
        match (k, dir[x]) {
            (0, _) => Some(true),
            (2, _) => Some(false),
            (_, Dir::Unknown) => None,
            (3, Dir::DtoB) | (1, Dir::BtoD) => Some(true),
            _ => Some(false),
        }
    };
    let mut queue: Vec<usize> = (0..raw.len()).rev().collect();
    loop {
        while let Some(x) = queue.pop() {
            for k in 0..4 {
                let Some(me) = role(&dir, x, k) else { continue };
                let l = raw[x][k];
                let (ox, ok) = *occ[&l].iter().find(|&&o| o != (x, k)).unwrap_or(&(x, k));
                match role(&dir, ox, ok) {
                    Some(r) if r == me => {
                        return Err(LinkParseError::new(
                            pos_of(ox.max(x)),
                            format!("inconsistent orientation along arc {l}"),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        // The other end takes the opposite role.
                        dir[ox] = match (ok, !me) {
                            (3, true) | (1, false) => Dir::DtoB,
                            _ => Dir::BtoD,
                        };
                        queue.push(ox);
                    }
                }
            }
        }
        match dir.iter().position(|&d| d == Dir::Unknown) {
            Some(x) => {
                dir[x] = Dir::DtoB;
                queue.push(x);
            }
            None => break,
        }
    }

    let crossings: Vec<Crossing> = raw
        .iter()
        .zip(&dir)
        .map(|(pd, d)| Crossing { pd: *pd, sign: if *d == Dir::DtoB { 1 } else { -1 } })
        .collect();

    // Edge heads and successors.
    let mut edge_head = BTreeMap::new();
    let mut next = BTreeMap::new();
    for (x, c) in crossings.iter().enumerate() {
        edge_head.insert(c.under_in(), x);
        edge_head.insert(c.over_in(), x);
        next.insert(c.under_in(), c.under_out());
        next.insert(c.over_in(), c.over_out());
    }

    let mut labels: Vec<u32> = occ.keys().copied().chain(loops.iter().copied()).collect();
    labels.sort_unstable();
    let mut edge_component = BTreeMap::new();
    let mut components = Vec::new();
    for l in labels {
        if edge_component.contains_key(&l) {
            continue;
        }
        let idx = components.len();
        let mut comp = vec![l];
        edge_component.insert(l, idx);
        if let Some(&first) = next.get(&l) {
            let mut e = first;
            while e != l {
                edge_component.insert(e, idx);
                comp.push(e);
                e = next[&e];
            }
        }
        components.push(comp);
    }
    let mut loops = loops.to_vec();
    loops.sort_unstable();
    Ok(LinkDiagram { crossings, loops, components, edge_component, edge_head })
}
