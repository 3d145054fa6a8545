from src.fixtures.documents import Document, load, load_path, save
from src.fixtures.catalog import Fixture, fixture, fixture_names
from src.fixtures.faces import face_poset_model, skeleton_decomposition
from src.fixtures.generate import generate
from src.fixtures.dot import export_dot
