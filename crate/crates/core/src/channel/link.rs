use super::ChannelError;
use crate::stack::Address;

/// Default permeability threshold.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Index of a link within its [`super::Topology`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkId(pub usize);

impl core::fmt::Display for LinkId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "link{}", self.0)
    }
}

/// Gap junction between two cells. Links start dephosphorylated (closed).
#[derive(Debug, Clone, PartialEq)]
pub struct GapJunctionLink {
    endpoints: (Address, Address),
    phosphorylation: f64,
    threshold: f64,
}

fn unit_interval(what: &'static str, value: f64) -> Result<f64, ChannelError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(ChannelError::Range { what, value })
    }
}

impl GapJunctionLink {
    /// `threshold` must lie strictly inside `(0, 1)`.
    pub fn new(a: Address, b: Address, threshold: f64) -> Result<Self, ChannelError> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(ChannelError::Range { what: "threshold", value: threshold });
        }
        if a == b {
            return Err(ChannelError::Link("link endpoints must differ"));
        }
        Ok(GapJunctionLink { endpoints: (a, b), phosphorylation: 0.0, threshold })
    }

    /// Ordered endpoints as declared.
    pub fn endpoints(&self) -> (Address, Address) {
        self.endpoints
    }

    /// The endpoint opposite `node`, if `node` is an endpoint.
    pub fn other_end(&self, node: Address) -> Option<Address> {
        match self.endpoints {
            (a, b) if a == node => Some(b),
            (a, b) if b == node => Some(a),
            _ => None,
        }
    }

    #[allow(missing_docs)]
    pub fn phosphorylation(&self) -> f64 {
        self.phosphorylation
    }

    #[allow(missing_docs)]
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Permeable iff phosphorylation ≥ threshold.
    pub fn is_open(&self) -> bool {
        self.phosphorylation >= self.threshold
    }

    /// Sets the phosphorylation level; rejects values outside `[0, 1]`.
    pub fn set_phosphorylation(&mut self, level: f64) -> Result<(), ChannelError> {
        self.phosphorylation = unit_interval("phosphorylation", level)?;
        Ok(())
    }

    /// By-value form of [`Self::set_phosphorylation`].
    pub fn with_phosphorylation(mut self, level: f64) -> Result<Self, ChannelError> {
        self.set_phosphorylation(level)?;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link() -> GapJunctionLink {
        GapJunctionLink::new(Address(1), Address(2), DEFAULT_THRESHOLD).unwrap()
    }

    #[test]
    fn threshold_rule() {
        assert!(!link().is_open());
        assert!(link().with_phosphorylation(1.0).unwrap().is_open());
        assert!(!link().with_phosphorylation(0.0).unwrap().is_open());
        assert!(link().with_phosphorylation(0.5).unwrap().is_open());
        assert!(!link().with_phosphorylation(0.4999).unwrap().is_open());
    }

    #[test]
    fn range_errors() {
        for bad in [-0.1, 1.0001, f64::NAN] {
            assert!(matches!(
                link().with_phosphorylation(bad),
                Err(ChannelError::Range { what: "phosphorylation", .. })
            ));
        }
        for bad in [0.0, 1.0, -1.0, f64::NAN] {
            assert!(GapJunctionLink::new(Address(1), Address(2), bad).is_err());
        }
        assert!(GapJunctionLink::new(Address(1), Address(1), 0.5).is_err());
    }

    #[test]
    fn other_end() {
        let l = link();
        assert_eq!(l.other_end(Address(1)), Some(Address(2)));
        assert_eq!(l.other_end(Address(2)), Some(Address(1)));
        assert_eq!(l.other_end(Address(3)), None);
    }
}
