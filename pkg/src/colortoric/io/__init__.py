from .serialization import serialize_instance, deserialize_instance, instance_hash, request_hash
from .io import save, load, dumps_report, wrap_report, resolve_cache_dir, ResultCache, CACHE_ENV
