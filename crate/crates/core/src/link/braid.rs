use std::fmt;
use std::str::FromStr;

use super::{parse, LinkDiagram, LinkParseError};

/// Braid word on `strands` strands; `+i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self, LinkParseError> {
        if strands == 0 {
            return Err(LinkParseError::new(0, "a braid needs at least one strand"));
        }
        for (k, &l) in letters.iter().enumerate() {
            if l == 0 || l.unsigned_abs() >= strands {
                return Err(LinkParseError::new(k, format!("letter {l} out of range for {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Diagram of the braid closure. Strands run downward; `σ_i` is a
    /// positive crossing in which the strand from position `i+1` passes over.
    pub fn closure(&self) -> LinkDiagram {
        let n = self.strands as usize;
        let mut next_label = self.strands + 1;
        let mut cur: Vec<u32> = (1..=self.strands).collect();
        let mut raw: Vec<[u32; 4]> = Vec::new();
        for &l in &self.letters {
            let i = (l.unsigned_abs() - 1) as usize;
            let (p, q) = (cur[i], cur[i + 1]);
            let (p2, q2) = (next_label, next_label + 1);
            next_label += 2;
            // p continues as p2 at position i+1, q continues as q2 at position i.
            raw.push(if l > 0 { [p, q2, p2, q] } else { [q, p, q2, p2] });
            cur[i] = q2;
            cur[i + 1] = p2;
        }
        // Close up: the bottom edge at each position is the top edge there.
        let mut subst = std::collections::BTreeMap::new();
        for (k, &bottom) in cur.iter().enumerate() {
            subst.insert(bottom, (k + 1) as u32);
        }
        let relabel = |x: u32| *subst.get(&x).unwrap_or(&x);
        let raw: Vec<[u32; 4]> = raw.iter().map(|c| c.map(relabel)).collect();
        let used: std::collections::BTreeSet<u32> = raw.iter().flatten().copied().collect();
        // Compact labels to 1..E in order of value.
        let compact: std::collections::BTreeMap<u32, u32> =
            used.iter().enumerate().map(|(k, &l)| (l, k as u32 + 1)).collect();
        let raw: Vec<[u32; 4]> = raw.iter().map(|c| c.map(|x| compact[&x])).collect();
        let mut loops = Vec::new();
        let mut fresh = used.len() as u32 + 1;
        for k in 0..n {
            if !used.contains(&((k + 1) as u32)) {
                loops.push(fresh);
                fresh += 1;
            }
        }
        parse::build(&raw, &loops, &vec![0; raw.len()]).expect("braid closures are valid diagrams")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BR {}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = LinkParseError;

    /// `BR <strands>: <±i> <±i> …`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lead = s.len() - s.trim_start().len();
        let body = s
            .trim_start()
            .strip_prefix("BR")
            .ok_or_else(|| LinkParseError::new(lead, "braid must start with 'BR'"))?;
        let colon = body.find(':').ok_or_else(|| LinkParseError::new(lead + 2, "expected ':' after strand count"))?;
        let strands: u32 = body[..colon]
            .trim()
            .parse()
            .map_err(|_| LinkParseError::new(lead + 2, "bad strand count"))?;
        let mut letters = Vec::new();
        let base = lead + 2 + colon + 1;
        let rest = &body[colon + 1..];
        let mut offset = 0;
        for tok in rest.split(|c: char| c.is_whitespace() || c == ',') {
            let at = base + offset;
            offset += tok.len() + 1;
            if tok.is_empty() {
                continue;
            }
            let v: i32 = tok.parse().map_err(|_| LinkParseError::new(at, format!("bad braid letter '{tok}'")))?;
            if v == 0 || v.unsigned_abs() >= strands {
                return Err(LinkParseError::new(at, format!("letter {v} out of range for {strands} strands")));
            }
            letters.push(v);
        }
        BraidWord::new(strands, letters)
    }
}
