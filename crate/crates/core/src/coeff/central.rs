//! Enumeration of the central fixed subfield `Z(D) ∩ D_ω ∩ ⋂ Ker δᵢ`.

use super::{MapRole, RingKind, RingMap, Scalar, ScalarError};

/// Consecutive rejected candidates after which the stream gives up.
const MAX_MISSES: usize = 4096;

/// Whether `e` is central, fixed by every automorphism in `maps` and killed
/// by every derivation in `maps`. All checks are exact.
pub fn is_in_fixed_field(e: &Scalar, maps: &[RingMap]) -> bool {
    let central = match e.kind() {
        RingKind::Quaternion => [Scalar::i(), Scalar::j(), Scalar::k()].iter().all(|g| e * g == g * e),
        _ => true,
    };
    central
        && maps.iter().all(|m| match m.role() {
            MapRole::Automorphism => m.apply(e).is_ok_and(|v| v == *e),
            MapRole::Derivation => m.apply(e).is_ok_and(|v| v.is_zero()),
        })
}

/// The rationals `0, 1, −1, 2, −2, …` embedded in the active ring, keeping
/// only those that pass [`is_in_fixed_field`].
#[derive(Clone, Debug)]
pub struct CentralFixedStream {
    kind: RingKind,
    maps: Vec<RingMap>,
    index: u64,
    exhausted: bool,
}

pub fn central_fixed_stream(kind: RingKind, maps: &[RingMap]) -> CentralFixedStream {
    CentralFixedStream {
        kind,
        maps: maps.to_vec(),
        index: 0,
        exhausted: false,
    }
}

impl CentralFixedStream {
    fn candidate(&self, index: u64) -> Scalar {
        let magnitude = index.div_ceil(2) as i64;
        let value = if index % 2 == 1 { magnitude } else { -magnitude };
        Scalar::from_int(self.kind, value)
    }

    /// The next `n` verified elements, or `ExhaustedCandidates`.
    pub fn take_verified(&mut self, n: usize) -> Result<Vec<Scalar>, ScalarError> {
        let out: Vec<Scalar> = self.by_ref().take(n).collect();
        if out.len() == n {
            Ok(out)
        } else {
            Err(ScalarError::ExhaustedCandidates)
        }
    }
}

impl Iterator for CentralFixedStream {
    type Item = Scalar;

    fn next(&mut self) -> Option<Scalar> {
        if self.exhausted {
            return None;
        }
        for _ in 0..MAX_MISSES {
            let c = self.candidate(self.index);
            self.index += 1;
            if is_in_fixed_field(&c, &self.maps) {
                return Some(c);
            }
        }
        self.exhausted = true;
        None
    }
}
