// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use super::{validate_filter, IndexFilter, ProductError};
use crate::structures::{tuples, Elem, Signature, Structure};

/// Default bound on the number of classes of a reduced product.
pub const DEFAULT_PRODUCT_CAP: u64 = 1_000_000;

/// A reduced product of finitely many structures, realized as a structure
/// whose elements are the equivalence classes of choice functions.
#[derive(Debug, Clone)]
pub struct ReducedProduct {
    structure: Structure,
    sizes: Vec<usize>,
    /// Positions on which two choice functions must agree to be identified.
    core: Vec<usize>,
}

impl ReducedProduct {
    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Intersection of the filter: two choice functions are equivalent
    /// exactly when they agree on these positions.
    pub fn core(&self) -> &[usize] {
        &self.core
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Class of a choice function (one element per component).
    pub fn class_of(&self, choice: &[Elem]) -> Result<Elem, ProductError> {
        if choice.len() != self.sizes.len() || choice.iter().zip(&self.sizes).any(|(&c, &n)| c >= n)
        {
            return Err(ProductError::BadChoice);
        }
        Ok(self
            .core
            .iter()
            .fold(0, |acc, &i| acc * self.sizes[i] + choice[i]))
    }

    /// The representative of a class: its values on the core, 0 elsewhere.
    pub fn representative(&self, class: Elem) -> Vec<Elem> {
        let mut choice = vec![0; self.sizes.len()];
        let mut rest = class;
        for &i in self.core.iter().rev() {
            choice[i] = rest % self.sizes[i];
            rest /= self.sizes[i];
        }
        choice
    }
}

/// The reduced product of `components` modulo `filter`: choice functions
/// are identified when the set of positions where they agree is in the
/// filter, and a predicate holds of classes when the set of positions where
/// it holds componentwise is in the filter.
pub fn reduced_product(
    components: &[Structure],
    filter: &IndexFilter,
    cap: u64,
) -> Result<ReducedProduct, ProductError> {
    let Some(first) = components.first() else {
        return Err(ProductError::ComponentCount {
            expected: filter.index_count(),
            found: 0,
        });
    };
    if components.len() != filter.index_count() {
        return Err(ProductError::ComponentCount {
            expected: filter.index_count(),
            found: components.len(),
        });
    }
    let sig: &Arc<Signature> = first.signature_arc();
    if components.iter().any(|c| c.signature() != &**sig) {
        return Err(ProductError::SignatureMismatch);
    }
    let violations = validate_filter(filter);
    if !violations.is_empty() {
        return Err(ProductError::InvalidFilter(violations));
    }
    let sizes: Vec<usize> = components.iter().map(Structure::size).collect();
    let core = filter.core();
    let count = core
        .iter()
        .fold(1u128, |acc, &i| acc.saturating_mul(sizes[i] as u128));
    if count > cap as u128 {
        return Err(ProductError::CapExceeded { count, cap });
    }
    let mut product = ReducedProduct {
        structure: first.clone(),
        sizes,
        core,
    };
    let n = count as usize;
    let reps: Vec<Vec<Elem>> = (0..n).map(|c| product.representative(c)).collect();

    let relations = sig
        .predicates()
        .iter()
        .enumerate()
        .map(|(p, sym)| {
            tuples(n, sym.arity)
                .map(|t| {
                    let mask = components.iter().enumerate().fold(0u64, |m, (i, b)| {
                        let args: Vec<Elem> = t.iter().map(|&c| reps[c][i]).collect();
                        if b.holds(p, &args) {
                            m | 1 << i
                        } else {
                            m
                        }
                    });
                    filter.contains_mask(mask)
                })
                .collect()
        })
        .collect();
    let functions = sig
        .functions()
        .iter()
        .enumerate()
        .map(|(f, sym)| {
            tuples(n, sym.arity)
                .map(|t| {
                    let value: Vec<Elem> = components
                        .iter()
                        .enumerate()
                        .map(|(i, b)| {
                            b.apply(f, &t.iter().map(|&c| reps[c][i]).collect::<Vec<_>>())
                        })
                        .collect();
                    product.class_of(&value)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let constants = (0..sig.constants().len())
        .map(|c| product.class_of(&components.iter().map(|b| b.constant(c)).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?;
    product.structure =
        Structure::from_tables(Arc::clone(sig), n, relations, functions, constants)?;
    Ok(product)
}
