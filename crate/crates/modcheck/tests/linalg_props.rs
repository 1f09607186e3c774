use modcheck::linalg::{maps_equal, FreeModule, LinearMap};
use modcheck::modality::random_map;
use modcheck::scalars::Rig;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn module(id: u32, dim: u32) -> FreeModule {
    FreeModule::base(Rig::Rationals, id, ["A", "B", "C"][id as usize], dim)
}

fn same(f: &LinearMap, g: &LinearMap) -> bool {
    maps_equal(f, g, 4).unwrap().is_none()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(seed in any::<u64>(), da in 1u32..4, db in 1u32..4, dc in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (module(0, da), module(1, db), module(2, dc));
        let f = random_map(&mut rng, &a, &b);
        let g = random_map(&mut rng, &b, &c);
        let h = random_map(&mut rng, &c, &a);
        let l = LinearMap::compose(&LinearMap::compose(&f, &g).unwrap(), &h).unwrap();
        let r = LinearMap::compose(&f, &LinearMap::compose(&g, &h).unwrap()).unwrap();
        prop_assert!(same(&l, &r));
    }

    #[test]
    fn identities_are_units(seed in any::<u64>(), da in 1u32..4, db in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (module(0, da), module(1, db));
        let f = random_map(&mut rng, &a, &b);
        prop_assert!(same(&LinearMap::compose(&LinearMap::identity(&a), &f).unwrap(), &f));
        prop_assert!(same(&LinearMap::compose(&f, &LinearMap::identity(&b)).unwrap(), &f));
    }

    #[test]
    fn tensor_is_functorial(seed in any::<u64>(), da in 1u32..3, db in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (module(0, da), module(1, db));
        let (f, g) = (random_map(&mut rng, &a, &b), random_map(&mut rng, &b, &a));
        let (h, k) = (random_map(&mut rng, &a, &b), random_map(&mut rng, &b, &a));
        let rig = Rig::Rationals;
        let lhs = LinearMap::compose(&LinearMap::tensor(&[f.clone(), h.clone()], rig), &LinearMap::tensor(&[g.clone(), k.clone()], rig)).unwrap();
        let rhs = LinearMap::tensor(&[LinearMap::compose(&f, &g).unwrap(), LinearMap::compose(&h, &k).unwrap()], rig);
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn symmetry_is_natural(seed in any::<u64>(), da in 1u32..3, db in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (module(0, da), module(1, db));
        let (f, g) = (random_map(&mut rng, &a, &a), random_map(&mut rng, &b, &b));
        let rig = Rig::Rationals;
        let lhs = LinearMap::compose(&LinearMap::tensor(&[f.clone(), g.clone()], rig), &LinearMap::symmetry(&a, &b)).unwrap();
        let rhs = LinearMap::compose(&LinearMap::symmetry(&a, &b), &LinearMap::tensor(&[g, f], rig)).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn addition_is_bilinear_under_composition(seed in any::<u64>(), d in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = module(0, d);
        let (f, g, h) = (random_map(&mut rng, &a, &a), random_map(&mut rng, &a, &a), random_map(&mut rng, &a, &a));
        let lhs = LinearMap::compose(&LinearMap::add(&f, &g).unwrap(), &h).unwrap();
        let rhs = LinearMap::add(&LinearMap::compose(&f, &h).unwrap(), &LinearMap::compose(&g, &h).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }
}
