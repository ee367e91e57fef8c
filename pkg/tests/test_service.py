import json

import pytest
from fastapi.testclient import TestClient

from shawn.fixture import seed_demo
from shawn.markup import PageRef
from shawn.inference import all_inferred
from shawn.service import create_app, graph_view, open_wiki, prefers_turtle
from shawn.store import PageStore

from oracles import parse_ntriples


@pytest.fixture
def demo_client(tmp_path):
    store = open_wiki(tmp_path / "wiki")
    seed_demo(store)
    return TestClient(create_app(store)), store


@pytest.fixture
def empty_client(tmp_path):
    store = PageStore(tmp_path / "wiki")
    return TestClient(create_app(store)), store


class TestViewRoute:
    def test_view_shows_forwardlinks_of_object_page(self, demo_client):
        client, _ = demo_client
        response = client.get("/wiki/Hamlet")
        assert response.status_code == 200
        sidebar = response.text.split('<aside class="sidebar">')[1]
        assert ">Shakespeare</a>" in sidebar
        assert ">isAuthorOf</a>" in sidebar

    def test_missing_page_offers_edit_form(self, empty_client):
        client, _ = empty_client
        response = client.get("/wiki/BrandNewPage")
        assert response.status_code == 200
        assert "<textarea" in response.text
        assert 'action="/wiki/BrandNewPage"' in response.text

    def test_sidebar_commands_run_for_the_sidebar_page_itself(self, demo_client):
        client, store = demo_client
        from shawn.navigation import expand_commands
        from shawn.markup import parse_page

        response = client.get("/wiki/SideBar")
        direct = expand_commands(
            store, parse_page("SideBar", store.load_page("SideBar")), "SideBar"
        )
        assert direct in response.text

    def test_breadcrumb_header_present(self, demo_client):
        client, _ = demo_client
        response = client.get("/wiki/JohnDoe")
        crumbs = response.text.split('<nav class="crumbs">')[1].split("</nav>")[0]
        assert ">Agent</a>" in crumbs and ">Person</a>" in crumbs and ">JohnDoe</a>" in crumbs

    def test_gotobar_strip_present(self, demo_client):
        client, _ = demo_client
        response = client.get("/wiki/JohnDoe")
        assert '<nav class="gotobar">' in response.text
        assert ">HomePage</a>" in response.text

    def test_invalid_name_is_404(self, empty_client):
        client, _ = empty_client
        assert client.get("/wiki/%20padded%20").status_code == 404
        assert client.get("/wiki/a%2Fb").status_code == 404

    def test_root_redirects_home(self, empty_client):
        client, _ = empty_client
        response = client.get("/", follow_redirects=False)
        assert response.status_code == 303
        assert response.headers["location"] == "/wiki/HomePage"


class TestEditFlow:
    def test_edit_form_prefills_exact_source(self, demo_client):
        client, store = demo_client
        response = client.get("/wiki/JohnDoe/edit")
        assert response.status_code == 200
        import html as html_module

        textarea = response.text.split('<textarea name="source" rows="20">')[1].split(
            "</textarea>"
        )[0]
        assert html_module.unescape(textarea) == store.load_page("JohnDoe")

    def test_unchanged_submit_is_byte_identical(self, demo_client):
        client, store = demo_client
        original = store.load_page("JohnDoe")
        response = client.post(
            "/wiki/JohnDoe", data={"source": original}, follow_redirects=False
        )
        assert response.status_code == 303
        assert store.load_page("JohnDoe") == original
        path = store.page_path("JohnDoe")
        assert path.read_bytes().decode("utf-8") == original

    def test_save_shows_up_as_forwardlink_instantly(self, empty_client):
        client, _ = empty_client
        response = client.post(
            "/wiki/NewPerson",
            data={"source": "LivesIn: [[Leipzig]]"},
            follow_redirects=False,
        )
        assert response.status_code == 303
        assert response.headers["location"] == "/wiki/NewPerson"
        view = client.get("/wiki/Leipzig")
        assert ">NewPerson</a>" in view.text
        assert ">LivesIn</a>" in view.text

    def test_missing_source_field_is_400(self, empty_client):
        client, _ = empty_client
        response = client.post("/wiki/X", data={"other": "y"})
        assert response.status_code == 400

    def test_readonly_disables_post(self, tmp_path):
        store = PageStore(tmp_path / "wiki")
        client = TestClient(create_app(store, readonly=True))
        response = client.post("/wiki/X", data={"source": "y"})
        assert response.status_code == 403
        assert not store.page_exists("X")


class TestListingsAndExport:
    def test_all_lists_every_page(self, demo_client):
        client, store = demo_client
        response = client.get("/all")
        for name in store.list_pages():
            assert f">{name}</a>" in response.text

    def test_all_on_empty_wiki(self, empty_client):
        client, _ = empty_client
        response = client.get("/all")
        assert response.status_code == 200
        assert '<ul class="allpages"></ul>' in response.text

    def test_export_reparses_to_store_triple_count(self, demo_client):
        client, store = demo_client
        response = client.get("/export.rdf")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("application/n-triples")
        assert len(parse_ntriples(response.text)) == len(store.all_triples())

    def test_accept_header_switches_to_turtle(self, demo_client):
        client, _ = demo_client
        response = client.get("/export.rdf", headers={"accept": "text/turtle"})
        assert response.headers["content-type"].startswith("text/turtle")

    def test_inferred_query_parameter(self, demo_client):
        client, store = demo_client
        plain = client.get("/export.rdf").text
        inferred = client.get("/export.rdf?inferred=1").text
        assert set(plain.splitlines()) < set(inferred.splitlines())

    def test_negotiation_rules(self):
        assert prefers_turtle("text/turtle")
        assert prefers_turtle("application/n-triples;q=0.1, text/turtle;q=0.9")
        assert not prefers_turtle("")
        assert not prefers_turtle("application/n-triples")
        assert not prefers_turtle("text/turtle;q=0")
        assert not prefers_turtle("text/turtle;q=0.1, application/n-triples;q=0.9")


class TestJsonApi:
    def test_graph_covers_ref_triples(self, tmp_path):
        store = PageStore(tmp_path / "wiki")
        store.save_page("Shakespeare", "isAuthorOf: [[Hamlet]]")
        view = graph_view(store)
        ids = {node["id"] for node in view["nodes"]}
        assert {"Shakespeare", "Hamlet"} <= ids
        assert view["edges"] == [
            {
                "source": "Shakespeare",
                "predicate": "isAuthorOf",
                "target": "Hamlet",
                "inferred": False,
            }
        ]

    def test_empty_store_graph(self, empty_client):
        client, _ = empty_client
        assert client.get("/api/graph").json() == {"nodes": [], "edges": []}

    def test_graph_edges_equal_store_plus_inference(self, demo_client):
        client, store = demo_client
        edges = client.get("/api/graph").json()["edges"]
        got = {
            (e["source"], e["predicate"], e["target"], e["inferred"]) for e in edges
        }
        expected = {
            (t.subject, t.predicate, t.object.name, False)
            for t in store.all_triples()
            if isinstance(t.object, PageRef)
        } | {
            (i.triple.subject, i.triple.predicate, i.triple.object.name, True)
            for i in all_inferred(store)
            if isinstance(i.triple.object, PageRef)
        }
        assert got == expected

    def test_literals_surface_as_node_attributes(self, demo_client):
        client, _ = demo_client
        nodes = {n["id"]: n for n in client.get("/api/graph").json()["nodes"]}
        literals = nodes["Shakespeare"]["literals"]
        assert {"predicate": "DateOfBirth", "value": "1564-04-26", "datatype": "date"} in literals
        assert "Person" in nodes["Shakespeare"]["types"]

    def test_triples_endpoint_matches_export(self, demo_client):
        client, store = demo_client
        listed = client.get("/api/triples").json()
        assert len(listed) == len(store.all_triples())
        rebuilt = set()
        for item in listed:
            obj = item["object"]
            value = (
                PageRef(obj["name"])
                if obj["type"] == "ref"
                else (obj["lexical"], obj["datatype"])
            )
            rebuilt.add((item["subject"], item["predicate"], str(value)))
        expected = {
            (
                t.subject,
                t.predicate,
                str(
                    t.object
                    if isinstance(t.object, PageRef)
                    else (t.object.lexical, t.object.datatype)
                ),
            )
            for t in store.all_triples()
        }
        assert rebuilt == expected

    def test_query_endpoint(self, demo_client):
        client, _ = demo_client
        response = client.post(
            "/api/query",
            json={"clauses": [{"predicate": "LivesIn", "op": "=", "value": "[[Leipzig]]"}]},
        )
        assert response.status_code == 200
        assert response.json() == {"matches": ["JohnDoe", "MaryMajor"]}

    def test_query_same_year(self, demo_client):
        client, _ = demo_client
        response = client.post(
            "/api/query",
            json={
                "clauses": [
                    {
                        "predicate": "DateOfBirth",
                        "op": "same-year",
                        "value": {
                            "type": "property-of",
                            "page": "Shakespeare",
                            "predicate": "DateOfBirth",
                        },
                    },
                    {
                        "predicate": "DateOfBirth",
                        "op": "!=",
                        "value": {
                            "type": "property-of",
                            "page": "Shakespeare",
                            "predicate": "DateOfBirth",
                        },
                    },
                ]
            },
        )
        assert response.json() == {"matches": ["Marlowe"]}

    def test_malformed_query_is_machine_readable_400(self, demo_client):
        client, _ = demo_client
        response = client.post("/api/query", json={"clauses": []})
        assert response.status_code == 400
        payload = response.json()
        assert payload["error"] == "malformed-query"
        assert payload["reason"]

    def test_invalid_json_body_is_400(self, demo_client):
        client, _ = demo_client
        response = client.post(
            "/api/query", content=b"not json", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400
        assert response.json()["error"] == "malformed-query"


class TestInvariantsOnRandomStores:
    def test_triples_api_equals_export_modulo_serialization(self, tmp_path):
        import random

        from conftest import populate_random_store
        from shawn.markup import TypedLiteral
        from shawn.rdf_export import UriPolicy, export

        base = "http://example.org/wiki/"
        datatype_names = {
            None: "string",
            "http://www.w3.org/2001/XMLSchema#date": "date",
            "http://www.w3.org/2001/XMLSchema#integer": "integer",
            "http://www.w3.org/2001/XMLSchema#decimal": "decimal",
        }
        rng = random.Random(404)
        for round_number in range(5):
            store = PageStore(tmp_path / f"d{round_number}")
            populate_random_store(store, rng, rng.randrange(1, 20))
            client = TestClient(create_app(store))
            from oracles import uri_to_page

            api_triples = set()
            for item in client.get("/api/triples").json():
                obj = item["object"]
                value = (
                    PageRef(obj["name"])
                    if obj["type"] == "ref"
                    else TypedLiteral(obj["lexical"], obj["datatype"])
                )
                api_triples.add((item["subject"], item["predicate"], value))
            exported = set()
            for s, p, o in parse_ntriples(export(store, UriPolicy(base)).body):
                value = (
                    PageRef(uri_to_page(o[1], base))
                    if o[0] == "uri"
                    else TypedLiteral(o[1], datatype_names[o[2]])
                )
                exported.add((uri_to_page(s, base), uri_to_page(p, base), value))
            assert api_triples == exported

    def test_storage_failure_maps_to_500(self, tmp_path):
        from shawn.store import StorageFailure

        store = PageStore(tmp_path / "wiki")

        def explode(_name):
            raise StorageFailure("disk on fire")

        store.load_page = explode
        client = TestClient(create_app(store), raise_server_exceptions=False)
        response = client.get("/wiki/AnyPage")
        assert response.status_code == 500
        assert "storage failure" in response.text


class TestRobustness:
    ADVERSARIAL_NAMES = [
        "..%2F..%2Fetc%2Fpasswd",
        "%2e%2e%2f%2e%2e%2fsecrets",
        "..",
        "...",
        "a%00b",
        "%0d%0a",
        "CON",
        "page%20",
        "%E2%80%AFweird",
        "emoji💥page",
        "very" + "long" * 60,
    ]

    def test_adversarial_names_stay_inside_data_dir(self, tmp_path):
        store = PageStore(tmp_path / "wiki")
        client = TestClient(create_app(store))
        outside_before = {p for p in tmp_path.rglob("*")}
        for name in self.ADVERSARIAL_NAMES:
            response = client.get(f"/wiki/{name}")
            assert response.status_code in (200, 303, 400, 404, 405)
            response = client.post(f"/wiki/{name}", data={"source": "x"})
            assert response.status_code in (200, 303, 400, 404, 405)
        for path in tmp_path.rglob("*"):
            if path not in outside_before:
                assert (tmp_path / "wiki") in path.parents, path

    def test_app_runs_without_static_assets(self, tmp_path):
        store = PageStore(tmp_path / "wiki")
        client = TestClient(create_app(store, static_dir=tmp_path / "nonexistent"))
        assert client.get("/wiki/HomePage").status_code == 200
        assert "/static/app.js" not in client.get("/wiki/HomePage").text
