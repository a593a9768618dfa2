//! Text and JSON output.

use serde_json::json;

use crate::eval::{Format, Value};

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Text => match v {
            Value::Scalar(c) => c.to_string(),
            Value::Base(b) => b.to_string(),
            Value::Element(e) => e.to_string(),
            Value::Square(s) => s.to_string(),
        },
        Format::Json => {
            let value = match v {
                Value::Scalar(c) => json!({ "scalar": c }),
                Value::Base(b) => {
                    json!({ "base": b.instance().to_string(), "terms": b.to_json().terms })
                }
                Value::Element(e) => serde_json::to_value(e.to_json()).expect("serializable"),
                Value::Square(s) => serde_json::to_value(s.to_json()).expect("serializable"),
            };
            serde_json::to_string(&value).expect("serializable")
        }
    }
}
