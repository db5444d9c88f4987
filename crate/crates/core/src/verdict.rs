use std::fmt;

/// Outcome of an exhaustive law check: either the law holds, or it fails
/// with the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(o: Option<W>) -> Self {
        match o {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        }
    }
}

impl<W: fmt::Display> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("PASS"),
            Verdict::Fails(w) => write!(f, "FAIL {w}"),
        }
    }
}
