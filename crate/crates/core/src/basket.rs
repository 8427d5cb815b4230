use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::ade::{AdeError, AdeType};

/// A multiset of du Val singularity types carried by a surface.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basket {
    entries: BTreeMap<AdeType, usize>,
}

impl Basket {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_types<I: IntoIterator<Item = AdeType>>(types: I) -> Self {
        let mut basket = Self::new();
        for t in types {
            basket.insert(t, 1);
        }
        basket
    }

    pub fn insert(&mut self, t: AdeType, multiplicity: usize) {
        if multiplicity > 0 {
            *self.entries.entry(t).or_insert(0) += multiplicity;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of singular points, one per entry counted with multiplicity.
    pub fn point_count(&self) -> usize {
        self.entries.values().sum()
    }

    /// Sum of the component counts `d_i` over all points.
    pub fn total_d(&self) -> u64 {
        self.entries
            .iter()
            .map(|(t, &m)| u64::from(t.components()) * m as u64)
            .sum()
    }

    /// `(type, multiplicity)` pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (AdeType, usize)> + '_ {
        self.entries.iter().map(|(&t, &m)| (t, m))
    }

    /// One item per singular point.
    pub fn points(&self) -> impl Iterator<Item = AdeType> + '_ {
        self.entries
            .iter()
            .flat_map(|(&t, &m)| std::iter::repeat_n(t, m))
    }

    pub fn multiplicity(&self, t: AdeType) -> usize {
        self.entries.get(&t).copied().unwrap_or(0)
    }

    /// Space separated tokens such as `A_1 3A_2`; empty string for the
    /// empty basket.
    pub fn to_tokens(&self) -> String {
        self.entries
            .iter()
            .map(|(t, &m)| if m == 1 { t.to_string() } else { format!("{m}{t}") })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses tokens separated by whitespace and/or commas. `-`, `(empty)`
    /// and the empty string denote the empty basket.
    pub fn parse_tokens(s: &str) -> Result<Self, AdeError> {
        let s = s.trim();
        let mut basket = Basket::new();
        if s.is_empty() || s == "-" || s == "(empty)" {
            return Ok(basket);
        }
        for token in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let split = token
                .find(|c: char| !c.is_ascii_digit())
                .ok_or_else(|| AdeError::Parse(token.to_string()))?;
            let (count, ty) = token.split_at(split);
            let count: usize = if count.is_empty() {
                1
            } else {
                count.parse().map_err(|_| AdeError::Parse(token.to_string()))?
            };
            if count == 0 {
                return Err(AdeError::Parse(token.to_string()));
            }
            basket.insert(ty.parse()?, count);
        }
        Ok(basket)
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "(empty)")
        } else {
            write!(f, "{}", self.to_tokens())
        }
    }
}

impl FromStr for Basket {
    type Err = AdeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Basket::parse_tokens(s)
    }
}

impl FromIterator<AdeType> for Basket {
    fn from_iter<I: IntoIterator<Item = AdeType>>(iter: I) -> Self {
        Basket::from_types(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens() {
        let b: Basket = "A_1, 3A_2 A_4".parse().unwrap();
        assert_eq!(b.multiplicity(AdeType::a(2)), 3);
        assert_eq!(b.point_count(), 5);
        assert_eq!(b.total_d(), 1 + 6 + 4);
        assert_eq!(b.to_tokens(), "A_1 3A_2 A_4");
        assert_eq!(b.to_tokens().parse::<Basket>().unwrap(), b);
        assert!(Basket::parse_tokens("-").unwrap().is_empty());
        assert!(Basket::parse_tokens("0A_1").is_err());
        assert!(Basket::parse_tokens("3").is_err());
        assert_eq!(Basket::new().to_string(), "(empty)");
    }

    #[test]
    fn canonical_order() {
        let b: Basket = "E_8 A_3 D_4 A_1".parse().unwrap();
        assert_eq!(b.to_tokens(), "A_1 A_3 D_4 E_8");
        assert_eq!(b.points().count(), 4);
    }
}
