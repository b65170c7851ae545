import json
import math
import os
import tempfile
from unittest import TestCase

from usdcoherence.model import (
    DiscriminationResult, DominanceError, FilteringCase, FilteringInstance,
    InstanceFormatError, InstanceValidationError, LengthMismatchError,
    OverlapRangeError, ParallelNormError, PairBranch, PairLabel, PriorOrderError,
    PriorRangeError, Priors, PurePairInstance, RankNPairInstance,
    Theorem3Case, WeightSumError, instance_from_dict, instance_to_dict,
    load_instance, validate, violations
)


class TestPriors(TestCase):
    def test_from_p1(self):
        priors = Priors.from_p1(0.15)

        self.assertEqual(priors.p1, 0.15)
        self.assertAlmostEqual(priors.p2, 0.85, places=15)

    def test_threshold(self):
        priors = Priors.from_p1(0.1)

        self.assertAlmostEqual(priors.threshold, 1.0 / 3.0, places=15)


class TestValidate(TestCase):
    def test_valid_instances_are_returned(self):
        instances = [
            FilteringInstance(Priors.from_p1(0.15), (0.1, 0.9), (0.0, 0.5)),
            PurePairInstance(Priors.from_p1(0.15), (0.1, 0.9), (0.0, 0.5),
                             (0.0, 0.0)),
            RankNPairInstance(Priors.from_p1(0.15), (0.5, 0.5), (0.5, 0.5),
                              (0.2, 0.5))
        ]

        for instance in instances:
            with self.subTest(instance=type(instance).__name__):
                self.assertIs(validate(instance), instance)

    def test_fields_are_coerced_to_float_tuples(self):
        inst = FilteringInstance(Priors(0, 1), [1], [0])

        self.assertEqual(inst.beta, (1.0,))
        self.assertIsInstance(inst.overlaps, tuple)
        self.assertIsInstance(inst.priors.p1, float)

    def test_each_invariant_has_its_own_error(self):
        cases = [
            (FilteringInstance(Priors.from_p1(0.2), (0.5, 0.6), (0.1, 0.1)),
             WeightSumError),
            (FilteringInstance(Priors.from_p1(0.2), (1.2, -0.2), (0.1, 0.1)),
             WeightSumError),
            (FilteringInstance(Priors(-0.1, 1.1), (0.5, 0.5), (0.1, 0.1)),
             PriorRangeError),
            (FilteringInstance(Priors.from_p1(0.6), (0.5, 0.5), (0.1, 0.1)),
             PriorOrderError),
            (FilteringInstance(Priors.from_p1(0.2), (0.5, 0.5), (1.1, 0.0)),
             OverlapRangeError),
            (FilteringInstance(Priors.from_p1(0.2), (0.5, 0.5), (0.8, 0.6)),
             ParallelNormError),
            (FilteringInstance(Priors.from_p1(0.2), (0.5, 0.5), (0.1,)),
             LengthMismatchError),
            (PurePairInstance(Priors.from_p1(0.2), (0.5, 0.5), (0.1, 0.1),
                              (0.0,)), LengthMismatchError),
            (FilteringInstance(Priors.from_p1(0.2), (0.5, 0.5), (math.nan, 0.1)),
             InstanceFormatError),
            (RankNPairInstance(Priors.from_p1(0.4), (0.9, 0.1), (0.1, 0.9),
                               (0.1, 0.1)), DominanceError)
        ]

        for instance, error in cases:
            with self.subTest(error=error.__name__):
                with self.assertRaises(error):
                    validate(instance)

    def test_all_violations_are_attached(self):
        inst = FilteringInstance(Priors.from_p1(0.7), (0.5, 0.6), (0.9, 0.9))

        with self.assertRaises(InstanceValidationError) as context:
            validate(inst)

        kinds = {type(found) for found in context.exception.violations}
        self.assertEqual(kinds, {PriorOrderError, WeightSumError, ParallelNormError})
        self.assertIsInstance(context.exception, PriorOrderError)

    def test_validation_errors_are_value_errors(self):
        inst = FilteringInstance(Priors.from_p1(0.2), (0.5, 0.6), (0.1, 0.1))

        with self.assertRaises(ValueError):
            validate(inst)

    def test_equal_priors_pass_dominance(self):
        inst = RankNPairInstance(Priors.from_p1(0.5), (0.3, 0.7), (0.3, 0.7),
                                 (0.5, 0.5))

        self.assertEqual(violations(inst), [])

    def test_unknown_type(self):
        with self.assertRaises(TypeError):
            violations({'p1': 0.1})


class TestResult(TestCase):
    def test_to_dict_with_pairs(self):
        result = DiscriminationResult(
            q_min=0.25, branch=Theorem3Case.ALL_IDENTIFIED,
            pairs=(PairBranch(0, PairLabel.IDENTIFIED, 0.25, 0.42),),
            identified_count=1)

        self.assertEqual(result.to_dict(), {
            'q_min': 0.25,
            'branch': 'AllIdentified',
            'pairs': [{'index': 0, 'branch': 'Identified', 'contribution': 0.25}],
            'identified_count': 1
        })

    def test_to_dict_plain(self):
        result = DiscriminationResult(q_min=0.34125, branch=FilteringCase.CASE_III)

        self.assertEqual(result.to_dict(), {'q_min': 0.34125, 'branch': 'CaseIII'})


class TestSerialization(TestCase):
    def test_kind_is_inferred_from_keys(self):
        documents = [
            ({'p1': 0.15, 'beta': [0.1, 0.9], 'overlaps': [0, 0.5]},
             FilteringInstance),
            ({'p1': 0.15, 'beta': [0.1, 0.9], 'overlaps': [0, 0.5],
              'phases': [0, 0]}, PurePairInstance),
            ({'p1': 0.15, 'alpha': [0.5, 0.5], 'beta': [0.5, 0.5],
              'diag_overlaps': [0.2, 0.5]}, RankNPairInstance)
        ]

        for document, kind in documents:
            with self.subTest(kind=kind.__name__):
                instance = instance_from_dict(document)

                self.assertIsInstance(instance, kind)
                self.assertEqual(instance_to_dict(instance)['beta'],
                                 document['beta'])

    def test_missing_fields(self):
        with self.assertRaises(InstanceFormatError):
            instance_from_dict({'p1': 0.15, 'beta': [1.0]})

    def test_wrong_types(self):
        with self.assertRaises(InstanceFormatError):
            instance_from_dict({'p1': 'low', 'beta': [1.0], 'overlaps': [0.5]})

    def test_not_a_mapping(self):
        with self.assertRaises(InstanceFormatError):
            instance_from_dict([0.15, [1.0], [0.5]])

    def test_invalid_values_raise_their_own_error(self):
        with self.assertRaises(WeightSumError):
            instance_from_dict({'p1': 0.15, 'beta': [0.5], 'overlaps': [0.5]})

    def test_load_instance(self):
        with tempfile.TemporaryDirectory() as directory:
            filepath = os.path.join(directory, 'instance.json')
            with open(filepath, 'w') as instance_file:
                json.dump({'p1': 0.5, 'beta': [1.0], 'overlaps': [0.5]},
                          instance_file)

            instance = load_instance(filepath)

        self.assertEqual(instance, FilteringInstance(
            Priors.from_p1(0.5), (1.0,), (0.5,)))

    def test_load_instance_bad_json(self):
        with self.assertRaises(InstanceFormatError):
            load_instance('tests/resources/config_files/bad_yaml.yml')
