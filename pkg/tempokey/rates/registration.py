import re
import importlib

from tempokey import error, logger

# (model-name)-v(version)    model-name is group 1, version is group 2
model_id_re = re.compile(r'^([\w:.-]+)-v(\d+)$')


def load(name):
    mod_name, attr_name = name.split(":")
    mod = importlib.import_module(mod_name)
    fn = getattr(mod, attr_name)
    return fn


class RateModelSpec(object):
    """A specification for a particular rate model configuration. Reports
    refer to models by this ID so curves computed at different times stay
    comparable.

    Args:
        id (str): The rate model ID
        entry_point (Optional[str]): The Python entrypoint of the model class (e.g. module.name:Class)
        kwargs (dict): The kwargs to pass to the model class
    """

    def __init__(self, id, entry_point=None, kwargs=None):
        self.id = id
        self.entry_point = entry_point
        self._kwargs = {} if kwargs is None else kwargs

        match = model_id_re.search(id)
        if not match:
            raise error.Error('Attempted to register malformed rate model ID: {}. (Currently all IDs must be of the form {}.)'.format(id, model_id_re.pattern))
        self._model_name = match.group(1)

    def make(self, **kwargs):
        """Instantiates the model with the registered kwargs, overridden by ``kwargs``."""
        if self.entry_point is None:
            raise error.Error('Attempting to make deprecated rate model {}. (HINT: is there a newer registered version?)'.format(self.id))
        _kwargs = self._kwargs.copy()
        _kwargs.update(kwargs)
        if callable(self.entry_point):
            model = self.entry_point(**_kwargs)
        else:
            cls = load(self.entry_point)
            model = cls(**_kwargs)

        # Make the model aware of which spec it came from.
        model.spec = self
        return model

    def __repr__(self):
        return "RateModelSpec({})".format(self.id)


class RateModelRegistry(object):
    """Register a rate model by ID. IDs remain stable over time and are
    guaranteed to resolve to the same rate expression (or be desupported).
    """

    def __init__(self):
        self.model_specs = {}

    def make(self, path, **kwargs):
        if len(kwargs) > 0:
            logger.info('Making new rate model: %s (%s)', path, kwargs)
        else:
            logger.info('Making new rate model: %s', path)
        return self.spec(path).make(**kwargs)

    def all(self):
        return self.model_specs.values()

    def spec(self, path):
        match = model_id_re.search(path)
        if not match:
            raise error.Error('Attempted to look up malformed rate model ID: {}. (Currently all IDs must be of the form {}.)'.format(path, model_id_re.pattern))

        try:
            return self.model_specs[path]
        except KeyError:
            model_name = match.group(1)
            matching = [valid_id for valid_id, valid_spec in self.model_specs.items()
                        if model_name == valid_spec._model_name]
            if matching:
                raise error.DeprecatedRateModel('Rate model {} not found (valid versions include {})'.format(path, matching))
            else:
                raise error.UnregisteredRateModel('No registered rate model with id: {}'.format(path))

    def register(self, id, **kwargs):
        if id in self.model_specs:
            raise error.Error('Cannot re-register id: {}'.format(id))
        self.model_specs[id] = RateModelSpec(id, **kwargs)

# Have a global registry
registry = RateModelRegistry()

def register(id, **kwargs):
    return registry.register(id, **kwargs)

def make(id, **kwargs):
    return registry.make(id, **kwargs)

def spec(id):
    return registry.spec(id)
