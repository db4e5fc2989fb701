//! The group-spec DSL: a compact string syntax for naming the groups the
//! tool can analyze, with a parser, a canonical renderer, and resolution to
//! a concrete permutation group.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use quillen_core::group::{parse_generator_file, PermGroup};
use quillen_core::Error;

/// A named generator file shipped inside the binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataName {
    M11,
    M12,
    M22,
    M23,
    J1,
}

impl DataName {
    pub fn label(self) -> &'static str {
        match self {
            DataName::M11 => "m11",
            DataName::M12 => "m12",
            DataName::M22 => "m22",
            DataName::M23 => "m23",
            DataName::J1 => "j1",
        }
    }

    fn content(self) -> &'static str {
        match self {
            DataName::M11 => include_str!("../data/m11.gens"),
            DataName::M12 => include_str!("../data/m12.gens"),
            DataName::M22 => include_str!("../data/m22.gens"),
            DataName::M23 => include_str!("../data/m23.gens"),
            DataName::J1 => include_str!("../data/j1.gens"),
        }
    }
}

/// Parsed form of a group spec. `parse` and `render` are mutually inverse:
/// `parse(render(s)) == s` for every value, and `render` is the canonical
/// spelling (no whitespace).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Wreath2(Box<GroupSpec>),
    File(PathBuf),
    Data(DataName),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::Wreath2(a) => write!(f, "wreath2({a})"),
            GroupSpec::File(path) => write!(f, "file:{}", path.display()),
            GroupSpec::Data(name) => write!(f, "data:{}", name.label()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec, Error> {
        parse_group_spec(s)
    }
}

impl GroupSpec {
    /// Canonical spelling, with no whitespace.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Build the permutation group this value names.
    pub fn resolve(&self) -> Result<PermGroup, Error> {
        match self {
            GroupSpec::Symmetric(n) => PermGroup::symmetric(*n),
            GroupSpec::Alternating(n) => PermGroup::alternating(*n),
            GroupSpec::Cyclic(n) => PermGroup::cyclic(*n),
            GroupSpec::Dihedral(n) => PermGroup::dihedral(*n),
            GroupSpec::Product(a, b) => {
                PermGroup::direct_product(&a.resolve()?, &b.resolve()?)
            }
            GroupSpec::Wreath2(a) => PermGroup::wreath_c2(&a.resolve()?),
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::Invalid(format!("cannot read {}: {e}", path.display()))
                })?;
                parse_generator_file(&text)
            }
            GroupSpec::Data(name) => parse_generator_file(name.content()),
        }
    }
}

/// Parse a group spec. Errors carry the byte position where parsing failed.
pub fn parse_group_spec(input: &str) -> Result<GroupSpec, Error> {
    let mut parser = Parser {
        text: input.trim(),
        pos: 0,
    };
    let spec = parser.spec()?;
    if parser.pos != parser.text.len() {
        return Err(parser.fail("trailing input after a complete spec"));
    }
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, msg: &str) -> Error {
        Error::Invalid(format!("group spec, position {}: {}", self.pos, msg))
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: char) -> Result<(), Error> {
        if self.eat(&token.to_string()) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected `{token}`")))
        }
    }

    fn spec(&mut self) -> Result<GroupSpec, Error> {
        let keyword: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric())
            .collect();
        self.pos += keyword.len();
        match keyword.as_str() {
            "symmetric" => Ok(GroupSpec::Symmetric(self.colon_number()?)),
            "alternating" => Ok(GroupSpec::Alternating(self.colon_number()?)),
            "cyclic" => Ok(GroupSpec::Cyclic(self.colon_number()?)),
            "dihedral" => Ok(GroupSpec::Dihedral(self.colon_number()?)),
            "product" => {
                self.expect('(')?;
                let a = self.spec()?;
                self.expect(',')?;
                let b = self.spec()?;
                self.expect(')')?;
                Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
            }
            "wreath2" => {
                self.expect('(')?;
                let a = self.spec()?;
                self.expect(')')?;
                Ok(GroupSpec::Wreath2(Box::new(a)))
            }
            "file" => {
                self.expect(':')?;
                let path = self.path_token()?;
                Ok(GroupSpec::File(PathBuf::from(path)))
            }
            "data" => {
                self.expect(':')?;
                let start = self.pos;
                let name = self.path_token()?;
                let known = match name.as_str() {
                    "m11" => DataName::M11,
                    "m12" => DataName::M12,
                    "m22" => DataName::M22,
                    "m23" => DataName::M23,
                    "j1" => DataName::J1,
                    other => {
                        self.pos = start;
                        return Err(self.fail(&format!(
                            "unknown data name `{other}` (expected m11, m12, m22, m23, or j1)"
                        )));
                    }
                };
                Ok(GroupSpec::Data(known))
            }
            "" => Err(self.fail("expected a group spec")),
            other => Err(Error::Invalid(format!(
                "group spec, position {}: unknown constructor `{other}`",
                self.pos - other.len()
            ))),
        }
    }

    fn colon_number(&mut self) -> Result<usize, Error> {
        self.expect(':')?;
        let digits: String = self
            .rest()
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return Err(self.fail("expected a number"));
        }
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| self.fail("number out of range"))
    }

    /// A file path or data name: everything up to the next `,` or `)`, so
    /// that paths can appear inside product(...) arguments. Paths containing
    /// those characters are not expressible; point `file:` elsewhere.
    fn path_token(&mut self) -> Result<String, Error> {
        let token: String = self
            .rest()
            .chars()
            .take_while(|&c| c != ',' && c != ')')
            .collect();
        if token.is_empty() {
            return Err(self.fail("expected a name or path"));
        }
        self.pos += token.len();
        Ok(token)
    }
}
