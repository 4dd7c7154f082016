/// Line-oriented `key=value` rendering of a report.
pub trait KeyValue {
    fn pairs(&self) -> Vec<(&'static str, String)>;

    fn to_kv(&self) -> String {
        self.pairs()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }
}

pub(crate) fn as_decimal<S: serde::Serializer>(
    x: &num_bigint::BigUint,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
