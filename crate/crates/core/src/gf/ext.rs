use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Fe, Field, GfError, Poly};

/// A fixed embedding of a base field into one of its extensions.
///
/// The generator of the base field is sent to the root of the base modulus
/// with the smallest canonical encoding in the target, so the embedding is
/// reproducible for every field pair.
pub struct Extension {
    base: Field,
    field: Field,
    degree: u32,
    image: Vec<Fe>,
    preimage: HashMap<Fe, Fe>,
}

type Key = (u64, Vec<u64>, u64, Vec<u64>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Extension>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<Extension>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Extension {
    /// The degree-`d` extension of `base`, presented by the default modulus
    /// of GF(p^{m d}). For `d = 1` this is the identity embedding.
    pub fn of_degree(base: &Field, d: u32) -> Result<Arc<Extension>, GfError> {
        let target = if d == 1 { base.clone() } else { Field::default_for(base.characteristic(), base.degree() * d)? };
        Extension::between(base, &target)
    }

    /// The fixed embedding `source -> target`.
    pub fn between(source: &Field, target: &Field) -> Result<Arc<Extension>, GfError> {
        let no = || GfError::NoEmbedding { from: source.order(), to: target.order() };
        if source.characteristic() != target.characteristic() || !target.degree().is_multiple_of(source.degree()) {
            return Err(no());
        }
        let key = (source.characteristic(), source.modulus().to_vec(), target.characteristic(), target.modulus().to_vec());
        let existing = cache().lock().unwrap().get(&key).cloned();
        if let Some(e) = existing {
            return Ok(e);
        }
        let root = if source == target {
            source.generator()
        } else {
            let modulus = Poly::from_coeffs(source.modulus().iter().map(|&c| Fe(c)).collect());
            *modulus.roots(target).first().ok_or_else(no)?
        };
        let p = source.characteristic();
        let powers: Vec<Fe> = (0..source.degree()).map(|i| target.pow_u(root, i as u64)).collect();
        let image: Vec<Fe> = source
            .elements()
            .map(|a| {
                let mut x = a.0;
                let mut acc = Fe::ZERO;
                for &pw in &powers {
                    let digit = x % p;
                    x /= p;
                    acc = target.add(acc, target.mul(Fe(digit), pw));
                }
                acc
            })
            .collect();
        let preimage = image.iter().enumerate().map(|(i, &v)| (v, Fe(i as u64))).collect();
        let ext = Arc::new(Extension {
            base: source.clone(),
            field: target.clone(),
            degree: target.degree() / source.degree(),
            image,
            preimage,
        });
        cache().lock().unwrap().insert(key, ext.clone());
        Ok(ext)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn embed(&self, a: Fe) -> Fe {
        self.image[a.0 as usize]
    }

    pub fn embed_poly(&self, p: &Poly) -> Poly {
        p.map(|c| self.embed(c))
    }

    /// Inverse of [`Extension::embed`] on its image.
    pub fn restrict(&self, a: Fe) -> Option<Fe> {
        self.preimage.get(&a).copied()
    }

    /// `a^{Q}` where `Q` is the base field order.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.field.pow_u(a, self.base.order())
    }

    /// Relative trace down to the base field.
    pub fn trace(&self, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut cur = a;
        for _ in 0..self.degree {
            acc = self.field.add(acc, cur);
            cur = self.frobenius(cur);
        }
        self.restrict(acc).expect("relative trace lies in the base field")
    }
}

/// Embeds `a` from its field into `target` using the fixed embedding.
pub fn embed(a: Fe, source: &Field, target: &Field) -> Result<Fe, GfError> {
    Ok(Extension::between(source, target)?.embed(a))
}
