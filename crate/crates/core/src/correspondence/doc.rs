//! JSON documents describing built-in correspondences.

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::geometry::CompactSet;
use crate::{Error, Result};

use super::{LinearCorrespondence, SublinearCorrespondence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntryDoc {
    pub direction: Vec<f64>,
    pub value: CompactSet,
}

/// `{"cone": ..., "kind": ..., "basis_images": ..., "params": ...}`.
///
/// | kind              | needs                                   |
/// |-------------------|-----------------------------------------|
/// | `linear`          | `cone`, `basis_images`                  |
/// | `interval-scalar` | `cone`, `params.lo`, `params.hi`        |
/// | `paper-example`   | nothing (the cone is `[0, inf)^2`)      |
/// | `table`           | `cone`, `params.entries`                |
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondenceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<Cone>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_images: Option<Vec<CompactSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalParams {
    lo: f64,
    hi: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableParams {
    entries: Vec<TableEntryDoc>,
}

pub const CORRESPONDENCE_KINDS: [&str; 4] = ["linear", "interval-scalar", "paper-example", "table"];

impl CorrespondenceDoc {
    fn need_cone(&self) -> Result<Cone> {
        self.cone
            .clone()
            .ok_or_else(|| Error::InvalidParameter(format!("kind {:?} needs a cone", self.kind)))
    }

    fn params<T: for<'de> Deserialize<'de>>(&self) -> Result<T> {
        let value = self
            .params
            .clone()
            .ok_or_else(|| Error::InvalidParameter(format!("kind {:?} needs params", self.kind)))?;
        serde_json::from_value(value)
            .map_err(|e| Error::InvalidParameter(format!("params for {:?}: {e}", self.kind)))
    }

    pub fn build(&self) -> Result<SublinearCorrespondence> {
        match self.kind.as_str() {
            "linear" => {
                let cone = self.need_cone()?;
                let images = self
                    .basis_images
                    .clone()
                    .ok_or_else(|| Error::InvalidParameter("linear kind needs basis_images".into()))?;
                let endo = images.first().is_some_and(|s| s.dim() == cone.dim())
                    && images.iter().all(|s| s.points().iter().all(|p| cone.contains(p)));
                let phi = if endo {
                    LinearCorrespondence::endomorphism(cone, images)?
                } else {
                    LinearCorrespondence::new(cone, images)?
                };
                Ok(SublinearCorrespondence::from_linear(phi))
            }
            "interval-scalar" => {
                let p: IntervalParams = self.params()?;
                SublinearCorrespondence::interval_scalar(self.need_cone()?, p.lo, p.hi)
            }
            "paper-example" => {
                if let Some(c) = &self.cone {
                    if !c.approx_eq(&Cone::standard(2)) {
                        return Err(Error::ConeMismatch("paper-example lives on [0, inf)^2".into()));
                    }
                }
                Ok(SublinearCorrespondence::paper_example())
            }
            "table" => {
                let p: TableParams = self.params()?;
                let entries = p.entries.into_iter().map(|e| (e.direction, e.value)).collect();
                SublinearCorrespondence::table(self.need_cone()?, entries)
            }
            other => Err(Error::InvalidParameter(format!("unknown correspondence kind {other:?}"))),
        }
    }
}
