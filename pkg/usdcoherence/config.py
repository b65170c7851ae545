"""
Definition of the Config class
"""

import yaml
from cerberus import Validator, schema_registry  # type: ignore
from yaml import YAMLError

from usdcoherence.program import Program


class Config:
    """
    This class is unique in that no instances of it should be created. It is
    used as a wrapper around a Dictionary object named config that contains
    the settings shared by every sweep and verification run. The _config class
    variable should only be accessed through getter and setter methods and
    should only be set once. There are methods defined in this class for
    generating a config Dictionary from a YAML file, validating the config
    against a Schema and filling in defaults for optional fields.
    """

    DIRECTORY_DEFAULT = '/tmp'
    LOG_FILEPATH_DEFAULT = DIRECTORY_DEFAULT + '/' + 'usdcoherence.log'
    TAIL_BOUND_DEFAULT = 1.0e-12
    TAIL_BOUND_MAX = 1.0e-6
    N_MAX_CAP_DEFAULT = 4096
    VERIFICATION_COUNT_DEFAULT = 10000
    VERIFICATION_SEED_DEFAULT = 42
    ALPHA_STOP_DEFAULT = 3.0
    SWEEP_STEP_DEFAULT = 0.01
    WORKERS_DEFAULT = 1

    # To understand these schema definitions better, compare side-by-side to
    # the template_config.yml file

    # Version of the config file
    VERSION = {
        'type': 'string',
        'empty': False,
        'required': True
    }

    # How infinite photon-number families are cut off
    schema_registry.add(
        'truncation',
        {
            'tail_bound': {
                'type': 'float',
                'coerce': float,
                'min': 1.0e-300,
                'max': TAIL_BOUND_MAX,
                'default': TAIL_BOUND_DEFAULT
            },
            'n_max_cap': {
                'type': 'integer',
                'min': 1,
                'default': N_MAX_CAP_DEFAULT
            }
        }
    )

    # Size and seed of randomized verification runs
    schema_registry.add(
        'verification',
        {
            'count': {
                'type': 'integer',
                'min': 1,
                'default': VERIFICATION_COUNT_DEFAULT
            },
            'seed': {
                'type': 'integer',
                'min': 0,
                'default': VERIFICATION_SEED_DEFAULT
            }
        }
    )

    # Fields for changing the functionality of usdcoherence
    USD_SETTINGS = {
        'type': 'dict',
        'default': {},
        'schema': {
            'log_filepath': {
                'type': 'string',
                'empty': False,
                'default': LOG_FILEPATH_DEFAULT
            },
            'truncation': {
                'type': 'dict',
                'default': {},
                'schema': 'truncation'
            },
            'verification': {
                'type': 'dict',
                'default': {},
                'schema': 'verification'
            },
            'sweep': {
                'type': 'dict',
                'default': {},
                'schema': {
                    'alpha_stop': {
                        'type': 'number',
                        'min': 0,
                        'default': ALPHA_STOP_DEFAULT
                    },
                    'step': {
                        'type': 'number',
                        'min': 1.0e-9,
                        'default': SWEEP_STEP_DEFAULT
                    }
                }
            },
            'workers': {
                'type': 'integer',
                'min': 1,
                'default': WORKERS_DEFAULT
            }
        }
    }

    # Schema for validating the structure of a config dictionary generated from
    # a user-provided YAML file
    SCHEMA = {
        'version': VERSION,
        'usd_settings': USD_SETTINGS
    }

    # Generate a Validator object with the given schema
    SCHEMA_VALIDATOR = Validator(SCHEMA)

    # Private class variable, should not be accessed directly, only through
    # getter and setter methods
    _config = None

    # Used to ensure that the _config variable is set once and only once
    _config_is_set = False

    @classmethod
    def _check_config_is_set(cls):
        """
        Used to check that this Config object is set before trying to access
        or set values
        """
        if cls._config_is_set:
            return

        raise RuntimeError('Cannot access values of config before setting it')

    @classmethod
    def set_config(cls, config):
        """
        Function used to set the config of a Config object once and only once.

        @param config   Dictionary used to set a Config object's 'config'
                        instance variable
        """
        if cls._config_is_set:
            raise RuntimeError('Config object already set. Cannot set Config '
                               'object more than once')

        cls._config = config
        cls._config_is_set = True

    @classmethod
    def get_value(cls, keys):
        """
        Getter for a Config object's 'config' instance variable
        """

        cls._check_config_is_set()
        value = cls.get_value_from_keys(cls._config, keys)

        if value is None:
            raise ValueError(f"{list(keys)} is an invalid key for this Config")

        return value

    @classmethod
    def get_log_filepath(cls):
        """@return the filepath where program messages should be saved"""
        return cls.get_value(['usd_settings', 'log_filepath'])

    @classmethod
    def get_tail_bound(cls):
        """@return the probability mass allowed in a truncated tail"""
        return cls.get_value(['usd_settings', 'truncation', 'tail_bound'])

    @classmethod
    def get_n_max_cap(cls):
        """@return the largest index a truncated family may reach"""
        return cls.get_value(['usd_settings', 'truncation', 'n_max_cap'])

    @classmethod
    def get_verification_count(cls):
        """@return how many random instances a verification run generates"""
        return cls.get_value(['usd_settings', 'verification', 'count'])

    @classmethod
    def get_verification_seed(cls):
        """@return the seed of randomized verification runs"""
        return cls.get_value(['usd_settings', 'verification', 'seed'])

    @classmethod
    def get_alpha_stop(cls):
        """@return the default upper end of amplitude sweeps"""
        return cls.get_value(['usd_settings', 'sweep', 'alpha_stop'])

    @classmethod
    def get_sweep_step(cls):
        """@return the default step of parameter sweeps"""
        return cls.get_value(['usd_settings', 'sweep', 'step'])

    @classmethod
    def get_workers(cls):
        """@return how many threads evaluate sweep points"""
        return cls.get_value(['usd_settings', 'workers'])

    @classmethod
    def default_config(cls):
        """
        @return a config Dictionary holding only default values, used when no
                config file is given on the command line
        """

        return cls._validate_and_normalize_config({'version': '1.0.0'})

    @classmethod
    def create_config(cls, config_filepath):
        """
        Attempt to read the file at config_filepath and generate a config
        Dictionary object based on a defined schema

        @param config_filepath  File from which to generate a config object
        """

        shutdown_reason = None

        try:
            with open(config_filepath) as config_file:
                # PyYAML gives better error messages for streams than for files
                config_file_data = config_file.read()
                config = yaml.safe_load(config_file_data)

                # Check config against a schema to ensure all the needed fields
                # and values are defined
                config = cls._validate_and_normalize_config(config)

        # Will occur when given a bad filepath or a bad file
        except OSError as os_error:
            shutdown_reason = f"{os_error}"
            Program.log('usdcoherence: Failed to open the config file. Check '
                        'that the filename is correct')

        # Will occur if the config file does not contain valid YAML
        except YAMLError as yaml_error:
            shutdown_reason = f"{yaml_error}"
            Program.log('usdcoherence: Failed to parse the config file. Check '
                        'that the config file has valid YAML.')

        # Validation of the config against a schema failed
        except ValueError:
            shutdown_reason = f"{cls.SCHEMA_VALIDATOR.errors}"
            Program.log('usdcoherence: Validation of the config file failed. '
                        'Check that required fields have proper values.')

        # No exception raised during the try block, return config
        else:
            return config

        # At this point, it is guaranteed that an exception was raised, which
        # means that it is shutdown time
        Program.initiate_shutdown(shutdown_reason)
        return None

    @classmethod
    def _validate_and_normalize_config(cls, config):
        """
        Use a schema and the cerberus library to validate that the given config
        dictionary has a valid structure

        @param config   Dictionary for which to validate the structure
        """

        # Config is not a valid structure
        if not isinstance(config, dict) or not cls.SCHEMA_VALIDATOR.validate(config):
            raise ValueError

        config = cls.SCHEMA_VALIDATOR.normalized(config)
        return config

    @staticmethod
    def get_value_from_keys(dictionary, keys):
        """
        Drill down into dictionary to retrieve a value given a list of keys

        @param dictionary   dict to retrieve a value from
        @param keys         List of keys to follow to retrieve a value

        @return value found after following the list of keys given
        """

        value = dictionary

        for key in keys:
            if not isinstance(value, dict):
                return None

            value = value.get(key)

            if value is None:
                break

        return value
