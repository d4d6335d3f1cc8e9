use linkgate_core::laurent::LaurentPoly;
use linkgate_core::link::{builtin, parse_link, parse_pd, BraidWord, LinkDiagram, BUILTIN_NAMES};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Builtin,
    Link,
    Pd,
    Braid,
    Poly,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Builtin => "builtin",
            Kind::Link => "link",
            Kind::Pd => "pd",
            Kind::Braid => "braid",
            Kind::Poly => "poly",
        }
    }
}

/// One `--builtin/--link/--pd/--braid/--poly` argument. `--link` takes a
/// built-in name, a braid or PD text.
#[derive(Debug, Clone)]
pub struct Source {
    pub kind: Kind,
    pub text: String,
}

pub enum Resolved {
    Link(LinkDiagram),
    Poly(LaurentPoly),
}

impl Source {
    pub fn echo(&self) -> Value {
        json!({ "kind": self.kind.name(), "text": self.text })
    }

    pub fn label(&self) -> String {
        match self.kind {
            Kind::Builtin => self.text.clone(),
            Kind::Link if builtin(self.text.trim()).is_some() => self.text.trim().to_string(),
            _ => format!("{} \"{}\"", self.kind.name(), self.text),
        }
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        match self.kind {
            Kind::Builtin => builtin(&self.text).map(Resolved::Link).ok_or_else(|| {
                CliError::Parse(format!("unknown built-in link '{}'; known: {}", self.text, BUILTIN_NAMES.join(", ")))
            }),
            Kind::Link => match builtin(self.text.trim()) {
                Some(d) => Ok(Resolved::Link(d)),
                None => parse_link(&self.text).map(Resolved::Link).map_err(|e| CliError::Parse(e.to_string())),
            },
            Kind::Pd => parse_pd(&self.text).map(Resolved::Link).map_err(|e| CliError::Parse(e.to_string())),
            Kind::Braid => {
                let b: BraidWord = self.text.parse().map_err(|e: linkgate_core::link::LinkParseError| CliError::Parse(e.to_string()))?;
                Ok(Resolved::Link(b.closure()))
            }
            Kind::Poly => self.text.parse().map(Resolved::Poly).map_err(|e: linkgate_core::laurent::ParsePolyError| CliError::Parse(e.to_string())),
        }
    }

    pub fn link(&self) -> Result<LinkDiagram, CliError> {
        match self.resolve()? {
            Resolved::Link(d) => Ok(d),
            Resolved::Poly(_) => Err(CliError::Parse("this command needs a link, not --poly".into())),
        }
    }
}
