from __future__ import annotations

import pytest

from pictoscaffold.errors import IndexOutOfRange, SessionNotFound
from pictoscaffold.pipeline import PipelineSettings
from pictoscaffold.sessions import SessionStore, ViewSettings

EN = PipelineSettings(language_override="en")


@pytest.fixture()
def document(scaffolder):
    return scaffolder.scaffold_document(
        "The prince was near a rose. It was the glorbix.", EN
    )


def test_create_defaults(document):
    store = SessionStore()
    session = store.create(document, "en")
    assert session.cursor == 0
    assert session.settings == ViewSettings(True, True)
    assert store.get(session.id) is session


def test_missing_session_raises():
    with pytest.raises(SessionNotFound):
        SessionStore().get("nope")


def test_cursor_bounds(document):
    store = SessionStore()
    session = store.create(document, "en")
    store.set_cursor(session.id, 1)
    assert store.get(session.id).cursor == 1
    with pytest.raises(IndexOutOfRange):
        store.set_cursor(session.id, 2)
    with pytest.raises(IndexOutOfRange):
        store.set_cursor(session.id, -1)


def test_view_filtering(document):
    store = SessionStore()
    session = store.create(document, "en")
    full = session.view_of(0)
    assert full["keywords"] and full["matches"]
    store.update_settings(session.id, {"show_keywords": False})
    assert session.view_of(0)["keywords"] == []
    with pytest.raises(ValueError):
        store.update_settings(session.id, {"volume": 3})


def test_persistence_round_trip(document, tmp_path):
    persist = tmp_path / "sessions"
    store = SessionStore(persist)
    session = store.create(document, "en", ViewSettings(show_pictograms=False))
    store.set_cursor(session.id, 1)

    restored_store = SessionStore(persist)
    restored = restored_store.get(session.id)
    assert restored.cursor == 1
    assert restored.settings == ViewSettings(True, False)
    assert restored.language == "en"
    assert [s.to_dict() for s in restored.document] == [s.to_dict() for s in session.document]
    assert restored.view_of(0) == session.view_of(0)
