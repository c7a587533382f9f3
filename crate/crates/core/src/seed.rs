//! Deterministic seed derivation.
//!
//! Every random decision in the crate draws from a [`rand_chacha::ChaCha8Rng`]
//! whose 64-bit seed is derived here. Reward streams use
//! `derive_seed(master, &[trial])`, per-agent policy randomness uses
//! `derive_seed(master, &[trial, agent_tag])`, so trials are independent and
//! byte-identical across runs and thread schedules.

/// splitmix64 scrambler (Steele, Lea & Flood's SplitMix generator step).
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hash-chains `parts` onto `master` to produce a sub-seed.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut s = splitmix64(master);
    for &p in parts {
        s = splitmix64(s ^ p);
    }
    s
}

/// FNV-1a over a string, used to tag agent names in seed chains.
pub fn name_tag(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
