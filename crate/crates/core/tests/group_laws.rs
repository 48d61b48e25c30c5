use neg2adic::{CostChargingGroup, CostProfile, ModularGroup, NegationAwareGroup};

fn check_laws<G: NegationAwareGroup<Element = u64>>(g: &G, n: u64, associativity: bool) {
    let id = g.identity();
    for a in 0..n {
        assert_eq!(g.add(&a, &id), a);
        assert_eq!(g.neg(&g.neg(&a)), a);
        assert_eq!(g.add(&a, &g.neg(&a)), id);
        assert_eq!(g.dbl(&a), g.add(&a, &a));
        assert_eq!(g.neg_dbl(&a), g.neg(&g.dbl(&a)));
        for b in 0..n {
            assert_eq!(g.add(&a, &b), g.add(&b, &a));
            assert_eq!(
                g.neg_add(&a, &b),
                g.neg(&g.add(&a, &b)),
                "n={n} a={a} b={b}"
            );
            if associativity {
                for c in 0..n {
                    assert_eq!(g.add(&g.add(&a, &b), &c), g.add(&a, &g.add(&b, &c)));
                }
            }
        }
    }
}

#[test]
fn modular_group_axioms_exhaustive() {
    for n in 1..=97 {
        let g = ModularGroup::new(n).unwrap();
        check_laws(&g, n, matches!(n, 5 | 7 | 11 | 31 | 97));
    }
}

#[test]
fn charging_wrapper_is_transparent() {
    for n in 1..=97 {
        let inner = ModularGroup::new(n).unwrap();
        for profile in [CostProfile::picard(), CostProfile::hyperelliptic()] {
            let g = CostChargingGroup::new(inner, profile);
            check_laws(&g, n, false);
            assert_eq!(g.order(), inner.order());
            for a in 0..n {
                assert_eq!(g.neg(&a), inner.neg(&a));
                assert_eq!(g.dbl(&a), inner.dbl(&a));
                assert_eq!(g.neg_dbl(&a), inner.neg_dbl(&a));
                for b in 0..n {
                    assert_eq!(g.add(&a, &b), inner.add(&a, &b));
                    assert_eq!(g.neg_add(&a, &b), inner.neg_add(&a, &b));
                }
            }
        }
    }
}

/// A group that relies on every default method.
struct Minimal(u64);

impl NegationAwareGroup for Minimal {
    type Element = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
}

#[test]
fn default_fused_operations_match_overrides() {
    for n in [5, 7, 11, 31, 97] {
        let m = Minimal(n);
        let g = ModularGroup::new(n).unwrap();
        check_laws(&m, n, false);
        for a in 0..n {
            assert_eq!(m.neg_dbl(&a), g.neg_dbl(&a));
            for b in 0..n {
                assert_eq!(m.neg_add(&a, &b), g.neg_add(&a, &b));
            }
        }
        assert_eq!(m.order(), None);
    }
}
