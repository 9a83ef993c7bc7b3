//! Shared, lazily built inducing modules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::field::{Field, Scalar};
use crate::modules_sl5::{
    build_gelfand_tsetlin, build_irreducible, lowering_recipes, Realization, RecipeStep, Sl5Module,
};
use crate::sl5::Weight;
use crate::Error;

type Recipes<F> = Arc<Vec<Vec<RecipeStep<F>>>>;

/// Cache of complete irreducible modules (and their lowering recipes) in a
/// fixed realisation. Safe to share between threads.
#[derive(Debug)]
pub struct ModuleCache<F = Scalar> {
    realization: Realization,
    modules: Mutex<HashMap<Weight, Arc<Sl5Module<F>>>>,
    recipes: Mutex<HashMap<Weight, Recipes<F>>>,
}

impl<F: Field> Default for ModuleCache<F> {
    fn default() -> Self {
        Self::new(Realization::GelfandTsetlin)
    }
}

impl<F: Field> ModuleCache<F> {
    pub fn new(realization: Realization) -> Self {
        ModuleCache { realization, modules: Mutex::default(), recipes: Mutex::default() }
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    /// The complete module `F(λ)`.
    pub fn module(&self, lambda: Weight) -> Result<Arc<Sl5Module<F>>, Error> {
        if let Some(m) = self.modules.lock().expect("cache lock").get(&lambda) {
            return Ok(m.clone());
        }
        let m = Arc::new(match self.realization {
            Realization::GelfandTsetlin => build_gelfand_tsetlin(lambda, None)?,
            Realization::Tensor => Sl5Module::clone(build_irreducible::<F>(lambda)?.module()),
        });
        // another thread may have won the race; keep the first copy
        Ok(self.modules.lock().expect("cache lock").entry(lambda).or_insert(m).clone())
    }

    /// `F(λ)` cut at the given depth (not cached). Returns the complete
    /// module when it is already known or shallow enough.
    pub fn truncated(&self, lambda: Weight, depth: usize) -> Result<Arc<Sl5Module<F>>, Error> {
        if let Some(m) = self.modules.lock().expect("cache lock").get(&lambda) {
            return Ok(m.clone());
        }
        let m = match self.realization {
            Realization::GelfandTsetlin => build_gelfand_tsetlin(lambda, Some(depth))?,
            Realization::Tensor => Sl5Module::clone(crate::modules_sl5::build_truncated::<F>(lambda, depth)?.module()),
        };
        if m.is_complete() {
            let m = Arc::new(m);
            return Ok(self.modules.lock().expect("cache lock").entry(lambda).or_insert(m).clone());
        }
        Ok(Arc::new(m))
    }

    /// Lowering recipes of `F(λ)`.
    pub fn recipes(&self, lambda: Weight) -> Result<Recipes<F>, Error> {
        if let Some(r) = self.recipes.lock().expect("cache lock").get(&lambda) {
            return Ok(r.clone());
        }
        let r = Arc::new(lowering_recipes(self.module(lambda)?.as_ref())?);
        Ok(self.recipes.lock().expect("cache lock").entry(lambda).or_insert(r).clone())
    }
}
