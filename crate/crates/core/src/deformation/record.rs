use serde::{Serialize, Serializer};

use crate::cohomology::Cochain;
use crate::exactnum::{Scalar, TPoly};
use crate::linalg::Matrix;

/// Lowest power of `t` where the Leibniz identity fails, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionOrder {
    None,
    Order(usize),
}

impl From<Option<usize>> for ObstructionOrder {
    fn from(o: Option<usize>) -> Self {
        o.map_or(ObstructionOrder::None, ObstructionOrder::Order)
    }
}

impl Serialize for ObstructionOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ObstructionOrder::None => s.serialize_str("none"),
            ObstructionOrder::Order(k) => s.serialize_u64(*k as u64),
        }
    }
}

/// Basis change realising the isomorphism at a concrete parameter value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub matrix: Matrix,
    pub t0: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationRecord {
    pub base: String,
    pub cocycles: Vec<(Cochain, TPoly)>,
    pub obstruction_order: ObstructionOrder,
    pub target: Option<String>,
    pub iso: Option<IsoWitness>,
    pub metric: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_serialization() {
        assert_eq!(serde_json::to_string(&ObstructionOrder::None).unwrap(), "\"none\"");
        assert_eq!(serde_json::to_string(&ObstructionOrder::from(Some(2))).unwrap(), "2");
    }
}
