"""Multi-label classification with extreme learning machines."""

from .dataset import (DatasetManifest, LabelSpec, MultiLabelDataset, load_dataset, parse_arff,
                      read_predictions, write_predictions)
from .elm import (Activation, ElmModel, HiddenLayerConfig, hidden_output_matrix, init_hidden_layer,
                  load_model, predict_labels, predict_raw, save_model, train)
from .errors import (ArffError, ConfigError, DataError, LabelError, MlelmError, NumericError,
                     ShapeError)
from .labels import LabelMatrix, LabelSet, bipolar_step, decode_bipolar, encode_bipolar
from .linalg import pseudoinverse, solve_output_weights
from .metrics import (DatasetStats, MetricReport, accuracy, dataset_stats, evaluate, f1,
                      hamming_loss, precision, recall)

__version__ = "0.1.0"
