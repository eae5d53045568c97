from src.config import get_settings

from .loader import ChoiceDataLoader


def make_choice_data_loader(strict: bool = True) -> ChoiceDataLoader:
    """Create a loader using the configured column mapping.

    :param strict: Reject the file when any row fails validation
    :returns: An instance of the choice data loader
    """
    settings = get_settings()
    return ChoiceDataLoader(schema=settings.columns, strict=strict)
