use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z/4Z`, acting on the generators by cyclic shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct TwistElement(u8);

impl TwistElement {
    pub const IDENTITY: TwistElement = TwistElement(0);

    pub fn new(value: i64) -> Self {
        TwistElement(value.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn compose(self, other: Self) -> Self {
        TwistElement((self.0 + other.0) % 4)
    }

    pub fn inverse(self) -> Self {
        TwistElement((4 - self.0) % 4)
    }

    pub fn all() -> [TwistElement; 4] {
        [0, 1, 2, 3].map(TwistElement)
    }
}

impl TryFrom<u8> for TwistElement {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        if v < 4 {
            Ok(TwistElement(v))
        } else {
            Err(Error::Parse(format!("twist {v} is not in 0..4")))
        }
    }
}

impl From<TwistElement> for u8 {
    fn from(t: TwistElement) -> u8 {
        t.0
    }
}

impl fmt::Display for TwistElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for TwistElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad twist {s:?}")))?;
        Ok(TwistElement::new(v))
    }
}

/// Signs acting on `(k1, k2, k3)`; a `-1` inverts that coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignTriple(pub [i8; 3]);

impl SignTriple {
    pub const IDENTITY: SignTriple = SignTriple([1, 1, 1]);

    /// Panics unless every entry is `1` or `-1`.
    pub fn new(signs: [i8; 3]) -> Self {
        assert!(signs.iter().all(|s| *s == 1 || *s == -1), "signs must be +1 or -1");
        SignTriple(signs)
    }

    pub fn compose(self, other: Self) -> Self {
        let [a, b, c] = self.0;
        let [x, y, z] = other.0;
        SignTriple([a * x, b * y, c * z])
    }

    /// Every element is its own inverse.
    pub fn inverse(self) -> Self {
        self
    }

    pub fn inverts(self, i: usize) -> bool {
        self.0[i] == -1
    }

    /// All eight elements in a fixed order.
    pub fn all() -> Vec<SignTriple> {
        let s = [1i8, -1];
        let mut out = Vec::with_capacity(8);
        for a in s {
            for b in s {
                for c in s {
                    out.push(SignTriple([a, b, c]));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn twist() -> impl Strategy<Value = TwistElement> {
        (0i64..4).prop_map(TwistElement::new)
    }

    fn signs() -> impl Strategy<Value = SignTriple> {
        prop::sample::select(SignTriple::all())
    }

    #[test]
    fn twist_residues() {
        assert_eq!(TwistElement::new(-1).value(), 3);
        assert_eq!(TwistElement::new(9).value(), 1);
        assert_eq!(serde_json::to_string(&TwistElement::new(2)).unwrap(), "2");
        assert!(serde_json::from_str::<TwistElement>("4").is_err());
    }

    proptest! {
        #[test]
        fn twist_group_laws(a in twist(), b in twist(), c in twist()) {
            prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
            prop_assert_eq!(a.compose(TwistElement::IDENTITY), a);
            prop_assert_eq!(a.compose(a.inverse()), TwistElement::IDENTITY);
            prop_assert_eq!(a.compose(b), b.compose(a));
        }

        #[test]
        fn sign_group_laws(a in signs(), b in signs(), c in signs()) {
            prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
            prop_assert_eq!(a.compose(SignTriple::IDENTITY), a);
            prop_assert_eq!(a.compose(a.inverse()), SignTriple::IDENTITY);
        }
    }
}
