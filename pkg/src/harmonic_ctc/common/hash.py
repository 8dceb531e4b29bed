import hashlib


def _make_hashable(obj):
    if isinstance(obj, dict):
        return tuple(sorted((k, _make_hashable(v)) for k, v in obj.items()))
    elif isinstance(obj, (list, tuple)):
        return tuple(_make_hashable(elem) for elem in obj)
    elif isinstance(obj, float):
        return format(obj, '.17g')
    else:
        return obj


def stable_hash(obj) -> str:
    """
    SHA-256 of a canonical repr, independent of dict ordering and float repr quirks.

    Args:
        obj: Nested dicts, lists, tuples and scalars

    Returns:
        str: Hexadecimal digest
    """
    return hashlib.sha256(repr(_make_hashable(obj)).encode('utf-8')).hexdigest()


def file_digest(path, chunk_size=4096) -> str:
    """
    SHA-256 of a file's bytes, read in chunks.

    Args:
        path: Path to the file
        chunk_size: Read size in bytes (default: 4096)

    Returns:
        str: Hexadecimal digest
    """
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(chunk_size), b""):
            digest.update(chunk)
    return digest.hexdigest()
