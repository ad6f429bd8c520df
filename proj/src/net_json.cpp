#include "maxapprox/net_json.hpp"

#include <json.hpp>

namespace maxapprox {

using OrderedJson = nlohmann::ordered_json;

std::string export_network_json(const ReluNetwork& net) {
    OrderedJson doc;
    doc["input_dim"] = net.input_dim;
    doc["output_dim"] = net.output_dim;
    doc["layers"] = OrderedJson::array();
    for (const Layer& layer : net.layers) {
        OrderedJson j;
        OrderedJson weights = OrderedJson::array();
        OrderedJson weights_f64 = OrderedJson::array();
        for (std::size_t i = 0; i < layer.weights.rows(); ++i) {
            OrderedJson row = OrderedJson::array();
            OrderedJson row_f64 = OrderedJson::array();
            for (std::size_t c = 0; c < layer.weights.cols(); ++c) {
                row.push_back(to_fraction_string(layer.weights(i, c)));
                row_f64.push_back(to_double(layer.weights(i, c)));
            }
            weights.push_back(std::move(row));
            weights_f64.push_back(std::move(row_f64));
        }
        j["weights"] = std::move(weights);
        OrderedJson bias = OrderedJson::array();
        for (const Rational& b : layer.bias) bias.push_back(to_fraction_string(b));
        j["bias"] = std::move(bias);
        j["activation"] = layer.activation == Activation::relu ? "relu" : "identity";
        if (!layer.annotations.empty()) {
            OrderedJson ann = OrderedJson::array();
            for (const auto& tuple : layer.annotations) ann.push_back(tuple);
            j["annotations"] = std::move(ann);
        }
        j["weights_f64"] = std::move(weights_f64);
        doc["layers"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

ReluNetwork import_network_json(const std::string& text) {
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("network JSON parse error at byte " +
                                    std::to_string(e.byte) + ": " + e.what());
    }
    try {
        ReluNetwork net;
        net.input_dim = doc.at("input_dim").get<std::size_t>();
        net.output_dim = doc.at("output_dim").get<std::size_t>();
        std::size_t prev = net.input_dim;
        for (const auto& j : doc.at("layers")) {
            Layer layer;
            const auto& weights = j.at("weights");
            const std::size_t rows = weights.size();
            const std::size_t cols = rows == 0 ? 0 : weights.at(0).size();
            if (cols != prev)
                throw std::invalid_argument("layer input width " + std::to_string(cols) +
                                            " does not follow width " + std::to_string(prev));
            layer.weights = Matrix(rows, cols);
            for (std::size_t i = 0; i < rows; ++i) {
                if (weights.at(i).size() != cols)
                    throw std::invalid_argument("ragged weight matrix");
                for (std::size_t c = 0; c < cols; ++c)
                    layer.weights(i, c) = parse_rational(weights.at(i).at(c).get<std::string>());
            }
            for (const auto& b : j.at("bias"))
                layer.bias.push_back(parse_rational(b.get<std::string>()));
            if (layer.bias.size() != rows)
                throw std::invalid_argument("bias length does not match layer rows");
            const std::string act = j.at("activation").get<std::string>();
            if (act == "relu")
                layer.activation = Activation::relu;
            else if (act == "identity")
                layer.activation = Activation::identity;
            else
                throw std::invalid_argument("unknown activation: " + act);
            if (j.contains("annotations")) {
                for (const auto& tuple : j.at("annotations"))
                    layer.annotations.push_back(tuple.get<std::vector<int>>());
                if (layer.annotations.size() != rows)
                    throw std::invalid_argument("annotation count does not match layer rows");
            }
            prev = rows;
            net.layers.push_back(std::move(layer));
        }
        if (prev != net.output_dim)
            throw std::invalid_argument("last layer width does not match output_dim");
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("network JSON schema error: ") + e.what());
    }
}

}  // namespace maxapprox
