from unittest import TestCase

from usdcoherence.sweep.spec import (
    SCHEDULE_DEFAULT, SpecError, SweepRange, build_spec, load_spec_document
)

SPECS = 'tests/resources/specs'


class TestBuildSpec(TestCase):
    def test_region_map_defaults(self):
        spec = build_spec({'target': 'RegionMap'})

        self.assertEqual(spec.p1, 0.15)
        self.assertEqual(spec.beta, (0.1, 0.9))
        self.assertEqual(spec.phases, (0.0, 0.0))
        self.assertEqual(spec.grid, 200)
        self.assertIsNone(spec.sweep)
        self.assertIsNone(spec.example)

    def test_region_map_single_weight(self):
        spec = build_spec({'target': 'RegionMap', 'beta': [0.25]})

        self.assertEqual(spec.beta, (0.25, 0.75))

    def test_region_map_rejects_sweep(self):
        with self.assertRaises(SpecError):
            build_spec({'target': 'RegionMap',
                        'sweep': {'parameter': 'beta1', 'step': 0.1}})

    def test_filtering_defaults(self):
        spec = build_spec({'target': 'FilteringDeltaQ'})

        self.assertEqual(spec.overlaps, (0.0, 0.5))
        self.assertEqual(spec.sweep, SweepRange('beta1', 0.0, 1.0, 0.01))

    def test_settings_fill_unset_fields(self):
        spec = build_spec({'target': 'Example1Gaussian', 'seed': 3},
                          {'step': 0.05, 'alpha_stop': 2.5, 'seed': 7,
                           'workers': 2})

        self.assertEqual(spec.sweep, SweepRange('alpha', 0.0, 2.5, 0.05))
        self.assertEqual(spec.seed, 3)
        self.assertEqual(spec.workers, 2)

    def test_unset_flags_are_ignored(self):
        spec = build_spec({'target': 'Verify', 'count': None, 'p1': None})

        self.assertEqual(spec.count, 10000)
        self.assertEqual(spec.p1, 0.15)

    def test_mixed_needs_two_overlaps(self):
        self.assertEqual(build_spec({'target': 'MixedDeltaQ'}).diag_overlaps,
                         (0.2, 0.5, 0.5))

        with self.assertRaises(SpecError):
            build_spec({'target': 'MixedDeltaQ', 'diag_overlaps': [0.5]})

    def test_example_defaults(self):
        binomial = build_spec({'target': 'Example1Binomial'})
        poisson = build_spec({'target': 'Example2Gaussian'})

        self.assertEqual((binomial.distribution, binomial.n), ('binomial', 10))
        self.assertEqual((binomial.t_index, binomial.overlap), (0, 0.5))
        self.assertEqual(binomial.example, 1)
        self.assertEqual(poisson.distribution, 'poisson')
        self.assertIsNone(poisson.n)
        self.assertEqual(poisson.schedule, SCHEDULE_DEFAULT)
        self.assertEqual(poisson.example, 2)

    def test_example_schedule(self):
        spec = build_spec({
            'target': 'Example2Gaussian', 'distribution': 'squeezed',
            'schedule': {'split': 2, 'head': 0.9, 'tail': 0.1}})

        self.assertEqual(spec.schedule,
                         {'split': 2, 'head': 0.9, 'tail': 0.1, 'reversed': False})

    def test_example_family_must_match(self):
        for target, distribution in (('Example1Binomial', 'poisson'),
                                     ('Example2Gaussian', 'binomial')):
            with self.subTest(target=target):
                with self.assertRaises(SpecError):
                    build_spec({'target': target, 'distribution': distribution})

    def test_wrong_parameter(self):
        with self.assertRaises(SpecError):
            build_spec({'target': 'MixedDeltaQ', 'sweep': {'parameter': 'alpha'}})

    def test_invalid_documents(self):
        documents = [
            {'p1': 0.15},
            {'target': 'RegionPlot'},
            {'target': 'RegionMap', 'p1': 0.7},
            {'target': 'RegionMap', 'color': 'red'},
            {'target': 'Example1Gaussian', 'tail_bound': 1e-3},
            {'target': 'FilteringDeltaQ', 'sweep': {'start': 0.8, 'stop': 0.2}},
            {'target': 'FilteringDeltaQ', 'overlaps': [0.1, 0.2, 0.3]},
            {'target': 'FilteringDeltaQ', 'overlaps': [1.2, 0.0]},
            {'target': 'FilteringDeltaQ', 'sweep': {'step': 1e-9}},
            {'target': 'Example1Gaussian', 'sweep': {'step': 1e-6}},
            {'target': 'Example2Gaussian', 'schedule': {'split': 2}},
            ['RegionMap']
        ]

        for document in documents:
            with self.subTest(document=document):
                with self.assertRaises(SpecError):
                    build_spec(document)

    def test_to_dict(self):
        spec = build_spec({'target': 'FilteringDeltaQ', 'out': 'curve.csv'})

        document = spec.to_dict()

        self.assertEqual(document['overlaps'], [0.0, 0.5])
        self.assertEqual(document['sweep']['parameter'], 'beta1')
        self.assertEqual(document['out'], 'curve.csv')
        self.assertNotIn('beta', document)
        self.assertNotIn('distribution', document)


class TestLoadSpecDocument(TestCase):
    def test_yaml(self):
        document = load_spec_document(f"{SPECS}/region_map.yml")

        self.assertEqual(document['target'], 'RegionMap')
        self.assertEqual(build_spec(document).grid, 20)

    def test_json(self):
        spec = build_spec(load_spec_document(f"{SPECS}/example2_poisson.json"))

        self.assertEqual(spec.target, 'Example2Gaussian')
        self.assertEqual(spec.sweep.step, 0.05)

    def test_bad_files(self):
        for name in ('missing.yml', 'bad_yaml.yml', 'not_a_mapping.yml'):
            with self.subTest(name=name):
                with self.assertRaises(SpecError):
                    load_spec_document(f"{SPECS}/{name}")

    def test_bad_target(self):
        with self.assertRaises(SpecError):
            build_spec(load_spec_document(f"{SPECS}/bad_target.yml"))
