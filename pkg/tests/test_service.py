import pytest
from fastapi.testclient import TestClient

from outbreakcorpus.config import ServiceConfig, load_config
from outbreakcorpus.errors import FileFormatError
from outbreakcorpus.indexing import BuildOptions, build_index
from outbreakcorpus.service import SnapshotHolder, create_app

from fixture_corpus import fixture_docs


@pytest.fixture(scope="module")
def index():
    return build_index(fixture_docs())


@pytest.fixture(scope="module")
def client(index):
    return TestClient(create_app(SnapshotHolder(index)))


class TestConfig:
    def test_defaults(self):
        cfg = load_config(env={})
        assert cfg == ServiceConfig()

    def test_file_then_env_precedence(self, tmp_path):
        conf = tmp_path / "svc.conf"
        conf.write_text("port=9000\nindex_dir=/srv/idx\n# comment\n")
        cfg = load_config(conf, env={"PORT": "9100", "CORS_ORIGIN": "http://ui"})
        assert cfg.port == 9100
        assert cfg.index_dir == "/srv/idx"
        assert cfg.cors_origin == "http://ui"

    def test_bad_key(self, tmp_path):
        conf = tmp_path / "svc.conf"
        conf.write_text("host=nowhere\n")
        with pytest.raises(FileFormatError) as exc:
            load_config(conf, env={})
        assert exc.value.line == 1

    def test_bad_port(self, tmp_path):
        with pytest.raises(FileFormatError):
            load_config(env={"PORT": "http"})


class TestHealth:
    def test_before_load(self):
        client = TestClient(create_app(SnapshotHolder()))
        response = client.get("/healthz")
        assert response.status_code == 503
        assert response.json()["status"] == "loading"

    def test_ready(self, client, index):
        response = client.get("/healthz")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert body["index_version"] == index.index_version


class TestSearchEndpoint:
    def test_basic_search(self, client, index):
        body = client.get("/search", params={"q": "plague"}).json()
        assert body["total"] == 2
        assert body["index_version"] == index.index_version
        assert [h["doc_id"] for h in body["hits"]] == [
            "rpt-bombay-1897", "rpt-hongkong-1894"]
        for hit in body["hits"]:
            assert hit["snippets"]

    def test_snippet_carries_region_string(self, client):
        body = client.get("/search", params={"q": "plague"}).json()
        hk = [h for h in body["hits"] if h["doc_id"] == "rpt-hongkong-1894"][0]
        assert hk["snippets"][0]["page"] == 3
        assert hk["snippets"][0]["regions"] == ["100,200,80,20"]

    def test_empty_query_is_400(self, client):
        response = client.get("/search", params={"q": ""})
        assert response.status_code == 400
        assert response.json()["position"] == 0

    def test_syntax_error_carries_position(self, client):
        response = client.get("/search", params={"q": "plague~9"})
        assert response.status_code == 400
        assert response.json()["position"] == 6

    def test_facet_selection(self, client):
        body = client.get("/search", params={"q": "plague", "facets": "zone"}).json()
        assert list(body["facets"]) == ["zone"]
        assert body["facets"]["zone"] == {"causes": 2, "outbreak-history": 1}

    def test_unknown_facet_is_422(self, client):
        response = client.get("/search", params={"q": "plague", "facets": "zone,bogus"})
        assert response.status_code == 422

    def test_bad_paging_is_400(self, client):
        assert client.get("/search", params={"q": "plague", "size": 0}).status_code == 400
        assert client.get("/search", params={"q": "plague", "page": 0}).status_code == 400

    def test_stable_responses(self, client):
        first = client.get("/search", params={"q": 'plague OR "was carried"'}).json()
        second = client.get("/search", params={"q": 'plague OR "was carried"'}).json()
        assert first == second


class TestInDocumentSearch:
    def test_word_level_region(self, client):
        body = client.get("/documents/rpt-hongkong-1894/search",
                          params={"q": "plague"}).json()
        assert len(body["resources"]) == 1
        resource = body["resources"][0]
        assert resource["match"] == "plague"
        assert resource["page"] == 3
        assert resource["region"] == "100,200,80,20"
        assert resource["char_end"] - resource["char_start"] == 6

    def test_match_without_alto_has_no_region(self, client):
        body = client.get("/documents/rpt-bombay-1897/search",
                          params={"q": "rats"}).json()
        assert len(body["resources"]) == 1
        assert body["resources"][0]["region"] is None

    def test_unknown_document(self, client):
        assert client.get("/documents/nope/search",
                          params={"q": "plague"}).status_code == 404

    def test_no_matches(self, client):
        body = client.get("/documents/rpt-bombay-1897/search",
                          params={"q": "cholera"}).json()
        assert body["resources"] == []

    def test_empty_q(self, client):
        assert client.get("/documents/rpt-bombay-1897/search",
                          params={"q": ""}).status_code == 400


class TestDocumentView:
    def test_zones_and_counts(self, client, index):
        body = client.get("/documents/rpt-bombay-1897").json()
        assert body["title"] == "Account of the Bombay epidemic"
        assert {z["label"] for z in body["zones"]} == {"outbreak-history", "causes"}
        assert sum(body["entity_counts"].values()) == body["entity_total"]

    def test_unknown_document(self, client):
        assert client.get("/documents/nope").status_code == 404


class TestPages:
    def test_not_configured(self, client):
        assert client.get("/pages/rpt-bombay-1897/1.png").status_code == 404

    def test_serves_file(self, index, tmp_path):
        png = tmp_path / "rpt-bombay-1897" / "1.png"
        png.parent.mkdir()
        png.write_bytes(b"\x89PNG\r\n\x1a\nfake")
        app = create_app(SnapshotHolder(index),
                         ServiceConfig(page_image_dir=str(tmp_path)))
        with TestClient(app) as c:
            response = c.get("/pages/rpt-bombay-1897/1.png")
            assert response.status_code == 200
            assert response.content.startswith(b"\x89PNG")
            assert c.get("/pages/rpt-bombay-1897/2.png").status_code == 404


class TestSwap:
    def test_version_changes_after_swap(self, index):
        holder = SnapshotHolder(index)
        client = TestClient(create_app(holder))
        before = client.get("/healthz").json()["index_version"]
        rebuilt = build_index(fixture_docs(), BuildOptions(exclude_table_zones=False))
        holder.swap(rebuilt)
        after = client.get("/healthz").json()["index_version"]
        assert after == rebuilt.index_version
        assert after != before

    def test_cors_header(self, index):
        app = create_app(SnapshotHolder(index),
                         ServiceConfig(cors_origin="http://localhost:5173"))
        with TestClient(app) as c:
            response = c.get("/healthz", headers={"Origin": "http://localhost:5173"})
            assert response.headers["access-control-allow-origin"] == (
                "http://localhost:5173")
