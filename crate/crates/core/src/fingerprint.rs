use serde::Serialize;
use sha2::{Digest, Sha256};

/// Short stable digest of a configuration value.
///
/// Hashes the compact JSON encoding, so field order in the serialized type
/// is part of the fingerprint.
pub fn fingerprint<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("configuration values serialize to JSON");
    hex::encode(&Sha256::digest(&bytes)[..8])
}
