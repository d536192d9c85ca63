use core::fmt;

/// Sign of an exact value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Negative),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Positive),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Sign::Negative => 0b001,
            Sign::Zero => 0b010,
            Sign::Positive => 0b100,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Negative => f.write_str("-1"),
            Sign::Zero => f.write_str("0"),
            Sign::Positive => f.write_str("+1"),
        }
    }
}

/// A non-empty subset of `{-1, 0, +1}`: the `E` of an atom `sign p(x) ∈ E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignSet(u8);

impl SignSet {
    /// `{0, +1}`, i.e. `p >= 0`.
    pub const NON_NEGATIVE: SignSet = SignSet(0b110);
    /// `{+1}`, i.e. `p > 0`.
    pub const POSITIVE: SignSet = SignSet(0b100);
    /// `{0}`, i.e. `p = 0`.
    pub const ZERO: SignSet = SignSet(0b010);
    /// `{-1, +1}`, i.e. `p != 0`.
    pub const NONZERO: SignSet = SignSet(0b101);
    pub const ALL: SignSet = SignSet(0b111);

    /// `None` for the empty set.
    pub fn new(signs: &[Sign]) -> Option<SignSet> {
        let bits = signs.iter().fold(0u8, |acc, s| acc | s.bit());
        (bits != 0).then_some(SignSet(bits))
    }

    pub fn contains(self, s: Sign) -> bool {
        self.0 & s.bit() != 0
    }

    /// The set for `-p` given the set for `p`.
    pub fn flip(self) -> SignSet {
        let mut bits = self.0 & 0b010;
        if self.0 & 0b001 != 0 {
            bits |= 0b100;
        }
        if self.0 & 0b100 != 0 {
            bits |= 0b001;
        }
        SignSet(bits)
    }

    /// Complement, or `None` when `self` is everything.
    pub fn complement(self) -> Option<SignSet> {
        let bits = !self.0 & 0b111;
        (bits != 0).then_some(SignSet(bits))
    }

    pub fn signs(self) -> impl Iterator<Item = Sign> {
        [Sign::Negative, Sign::Zero, Sign::Positive]
            .into_iter()
            .filter(move |s| self.contains(*s))
    }

    /// True for the subsets of `{0, +1}` allowed in the classical setting.
    pub fn within_zero_or_positive(self) -> bool {
        !self.contains(Sign::Negative)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_bits(bits: u8) -> Option<SignSet> {
        (bits != 0 && bits <= 0b111).then_some(SignSet(bits))
    }
}

impl fmt::Display for SignSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for s in self.signs() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}", s.as_i8())?;
        }
        f.write_str("}")
    }
}
