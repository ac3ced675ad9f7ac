// 64-bit FNV-1a. Stable across platforms and toolchains, which std's
// `DefaultHasher` does not promise.

const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const PRIME: u64 = 0x0000_0100_0000_01b3;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fnv64(u64);

impl Fnv64 {
    pub(crate) fn new() -> Self {
        Fnv64(OFFSET)
    }

    pub(crate) fn write(&mut self, bytes: &[u8]) -> &mut Self {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(PRIME);
        }
        self
    }

    /// Length-prefixed write so that ("ab","c") and ("a","bc") differ.
    pub(crate) fn write_field(&mut self, bytes: &[u8]) -> &mut Self {
        self.write(&(bytes.len() as u64).to_le_bytes());
        self.write(bytes)
    }

    pub(crate) fn write_u64(&mut self, v: u64) -> &mut Self {
        self.write(&v.to_le_bytes())
    }

    pub(crate) fn finish(&self) -> u64 {
        self.0
    }
}

/// Derives an independent stream seed from a master seed and a list of tags.
pub(crate) fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    let mut h = Fnv64::new();
    h.write_u64(master);
    for &t in tags {
        h.write_u64(t);
    }
    h.finish()
}
